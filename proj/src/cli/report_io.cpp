#include "kproj/cli/report_io.hpp"

#include <cmath>

namespace kproj::cli {

namespace {

nlohmann::json number(double x)
{
    if (!std::isfinite(x)) return nullptr;
    return x;
}

nlohmann::json check_to_json(const CheckResult& c)
{
    nlohmann::json j;
    j["name"] = c.name;
    j["paper_ref"] = c.paper_ref;
    j["residual"] = number(c.residual);
    j["margin"] = number(c.margin);
    j["tolerance"] = number(c.tolerance);
    j["mode"] = std::string(to_string(c.mode));
    j["status"] = std::string(to_string(c.status));
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

}  // namespace

nlohmann::json report_to_json(const Report& report)
{
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;

    nlohmann::json subject;
    subject["dim"] = report.subject.dim;
    subject["rank"] = report.subject.rank;
    subject["p_hash"] = report.subject.p_hash;
    subject["j_hash"] = report.subject.j_hash ? nlohmann::json(*report.subject.j_hash) : nlohmann::json(nullptr);
    if (!report.subject.label.empty()) subject["label"] = report.subject.label;
    doc["subject"] = std::move(subject);

    doc["config"] = {{"rank_tol", report.config.rank_tol},
                     {"psd_tol", report.config.psd_tol},
                     {"residual_tol", report.config.residual_tol}};
    doc["seed"] = report.seed ? nlohmann::json(*report.seed) : nlohmann::json(nullptr);

    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : report.checks) checks.push_back(check_to_json(c));
    doc["checks"] = std::move(checks);

    doc["summary"] = {{"pass", report.count(CheckStatus::Pass)},
                      {"fail", report.count(CheckStatus::Fail)},
                      {"skipped", report.count(CheckStatus::Skipped)}};
    doc["overall"] = report.passed() ? "pass" : "fail";
    return doc;
}

std::string format_report(const Report& report)
{
    return report_to_json(report).dump(2) + "\n";
}

std::string format_batch(const std::vector<BatchCase>& cases)
{
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    nlohmann::json arr = nlohmann::json::array();
    bool all_pass = true;
    for (const BatchCase& c : cases) {
        nlohmann::json entry;
        if (c.error.empty()) {
            entry = report_to_json(c.report);
            entry.erase("schema_version");
            all_pass = all_pass && c.report.passed();
        } else {
            entry["error"] = c.error;
            entry["overall"] = "fail";
            all_pass = false;
        }
        entry["input"] = c.input;
        arr.push_back(std::move(entry));
    }
    doc["cases"] = std::move(arr);
    doc["overall"] = all_pass ? "pass" : "fail";
    return doc.dump(2) + "\n";
}

}  // namespace kproj::cli
