#include "kproj/report.hpp"

#include <algorithm>
#include <cstring>

namespace kproj {

std::string_view to_string(CheckStatus status)
{
    switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    }
    return "unknown";
}

std::string_view to_string(CheckMode mode)
{
    switch (mode) {
    case CheckMode::Residual: return "residual";
    case CheckMode::Margin: return "margin";
    case CheckMode::Verdict: return "verdict";
    }
    return "unknown";
}

CheckResult CheckResult::residual_check(std::string name, std::string ref, double residual, double tolerance,
                                        std::string note)
{
    CheckResult c{std::move(name), std::move(ref), residual, 0.0, tolerance, CheckMode::Residual,
                  CheckStatus::Fail, std::move(note)};
    // NaN residuals fail.
    if (residual <= tolerance) c.status = CheckStatus::Pass;
    return c;
}

CheckResult CheckResult::margin_check(std::string name, std::string ref, double margin, double tolerance,
                                      std::string note)
{
    CheckResult c{std::move(name), std::move(ref), 0.0, margin, tolerance, CheckMode::Margin,
                  CheckStatus::Fail, std::move(note)};
    if (margin >= -tolerance) c.status = CheckStatus::Pass;
    return c;
}

CheckResult CheckResult::verdict(std::string name, std::string ref, bool ok, double residual, double margin,
                                 double tolerance, std::string note)
{
    return {std::move(name), std::move(ref),  residual,
            margin,          tolerance,       CheckMode::Verdict,
            ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(note)};
}

CheckResult CheckResult::skipped(std::string name, std::string ref, std::string reason)
{
    return {std::move(name), std::move(ref), 0.0, 0.0, 0.0, CheckMode::Verdict, CheckStatus::Skipped,
            std::move(reason)};
}

void Report::append(const Report& other, std::string_view prefix)
{
    for (const CheckResult& c : other.checks) {
        CheckResult copy = c;
        copy.name = std::string(prefix) + copy.name;
        checks.push_back(std::move(copy));
    }
}

bool Report::passed() const
{
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

std::size_t Report::count(CheckStatus status) const
{
    return static_cast<std::size_t>(std::count_if(
        checks.begin(), checks.end(), [status](const CheckResult& c) { return c.status == status; }));
}

const CheckResult* Report::first_failure() const
{
    auto it = std::find_if(checks.begin(), checks.end(),
                           [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
    return it == checks.end() ? nullptr : &*it;
}

std::string matrix_hash(const CMatrix& a)
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ULL;
        }
    };
    const std::int64_t dims[2] = {a.rows(), a.cols()};
    mix(dims, sizeof(dims));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const double parts[2] = {a(i, j).real(), a(i, j).imag()};
            mix(parts, sizeof(parts));
        }

    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = kHex[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace kproj
