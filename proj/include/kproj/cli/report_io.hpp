#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kproj/report.hpp"

namespace kproj::cli {

inline constexpr const char* kSchemaVersion = "1";

/// ReportFile document for one subject. Keys are emitted in sorted order and
/// non-finite numbers as null.
nlohmann::json report_to_json(const Report& report);

/// Serialized ReportFile, two-space indented, trailing newline.
std::string format_report(const Report& report);

struct BatchCase {
    std::string input;
    Report report;
    std::string error;  // set when the case could not be run at all
};

/// Merged document for a --glob run: one entry per case, in input order.
std::string format_batch(const std::vector<BatchCase>& cases);

}  // namespace kproj::cli
