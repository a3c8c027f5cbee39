#pragma once
/**
 * @file report.hpp
 * @brief Check records, the verification report and its JSON/text forms.
 */

#include <map>
#include <string>
#include <vector>

namespace tlcat {

enum class Status { Pass, Fail, Info, Skipped };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct CheckRecord {
    std::string suite;
    std::string id;
    std::string anchor;
    Status status = Status::Info;
    std::map<std::string, double> measured;
    std::map<std::string, double> bound;
    double runtime = 0.0;  // seconds
    std::string note;
};

struct ReportSummary {
    int pass = 0, fail = 0, info = 0, skipped = 0;
    int total() const { return pass + fail + info + skipped; }
};

struct VerificationReport {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    std::string algebra;  // empty when every suite used its default
    std::vector<std::string> suites;
    int K = 0;
    double tol = 0.0;
    unsigned seed = 0;
    long budget = 0;
    std::vector<CheckRecord> records;

    ReportSummary summary() const;
    /// 0 when nothing failed, 1 otherwise
    int exit_code() const { return summary().fail == 0 ? 0 : 1; }
};

/// non-finite numbers are written as null and read back as NaN
std::string report_to_json(const VerificationReport& r, bool with_runtimes = true, int indent = 2);
VerificationReport report_from_json(const std::string& s);
std::string report_to_text(const VerificationReport& r);

/// same records and configuration; NaN equals NaN, runtimes are ignored
bool equivalent(const VerificationReport& a, const VerificationReport& b);

}  // namespace tlcat
