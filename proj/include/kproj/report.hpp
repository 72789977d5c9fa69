#pragma once

// Certificate model: named checks with residuals, margins and tolerances,
// grouped into a report about one (P, J) subject.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kproj/numcore.hpp"

namespace kproj {

enum class CheckStatus { Pass, Fail, Skipped };

/// How status is derived. Residual: residual <= tolerance. Margin:
/// margin >= -tolerance. Verdict: decided by the caller (biconditionals and
/// classifications), residual and margin are informational.
enum class CheckMode { Residual, Margin, Verdict };

std::string_view to_string(CheckStatus status);
std::string_view to_string(CheckMode mode);

struct CheckResult {
    std::string name;
    std::string paper_ref;
    double residual = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
    CheckMode mode = CheckMode::Residual;
    CheckStatus status = CheckStatus::Skipped;
    std::string note;

    static CheckResult residual_check(std::string name, std::string ref, double residual, double tolerance,
                                      std::string note = {});
    static CheckResult margin_check(std::string name, std::string ref, double margin, double tolerance,
                                    std::string note = {});
    static CheckResult verdict(std::string name, std::string ref, bool ok, double residual, double margin,
                               double tolerance, std::string note = {});
    static CheckResult skipped(std::string name, std::string ref, std::string reason);

    bool passed() const { return status == CheckStatus::Pass; }
};

struct Subject {
    Eigen::Index dim = 0;
    Eigen::Index rank = 0;
    std::string p_hash;
    std::optional<std::string> j_hash;
    std::string label;
};

struct Report {
    Subject subject;
    std::vector<CheckResult> checks;
    ToleranceConfig config;
    std::optional<std::uint64_t> seed;

    void add(CheckResult check) { checks.push_back(std::move(check)); }

    /// Appends every check of `other`, prefixing names with `prefix`.
    void append(const Report& other, std::string_view prefix = {});

    /// Every non-skipped check passed.
    bool passed() const;

    std::size_t count(CheckStatus status) const;

    /// First failing check, or nullptr.
    const CheckResult* first_failure() const;
};

/// FNV-1a over the dimensions and the raw IEEE bytes of every entry, as 16
/// hex digits. Stable for a given platform and input.
std::string matrix_hash(const CMatrix& a);

}  // namespace kproj
