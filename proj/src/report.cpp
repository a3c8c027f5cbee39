#include "tlcat/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tlcat {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Info: return "info";
        case Status::Skipped: return "skipped";
    }
    return "info";
}

Status status_from_string(const std::string& s) {
    if (s == "pass") return Status::Pass;
    if (s == "fail") return Status::Fail;
    if (s == "info") return Status::Info;
    if (s == "skipped") return Status::Skipped;
    throw std::invalid_argument("unknown status: " + s);
}

ReportSummary VerificationReport::summary() const {
    ReportSummary s;
    for (const auto& r : records) {
        switch (r.status) {
            case Status::Pass: ++s.pass; break;
            case Status::Fail: ++s.fail; break;
            case Status::Info: ++s.info; break;
            case Status::Skipped: ++s.skipped; break;
        }
    }
    return s;
}

namespace {

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json values(const std::map<std::string, double>& m) {
    ordered_json o = ordered_json::object();
    for (const auto& [k, v] : m) o[k] = number(v);
    return o;
}

std::map<std::string, double> read_values(const json& o) {
    std::map<std::string, double> m;
    for (auto it = o.begin(); it != o.end(); ++it)
        m[it.key()] = it.value().is_null() ? std::numeric_limits<double>::quiet_NaN() : it.value().get<double>();
    return m;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (ia->first != ib->first || !same(ia->second, ib->second)) return false;
    return true;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join_values(const std::map<std::string, double>& m) {
    std::string s;
    for (const auto& [k, v] : m) {
        if (!s.empty()) s += " ";
        s += k + "=" + fmt(v);
    }
    return s;
}

}  // namespace

std::string report_to_json(const VerificationReport& r, bool with_runtimes, int indent) {
    ordered_json j;
    j["schema_version"] = r.schema_version;
    ordered_json cfg;
    cfg["algebra"] = r.algebra;
    cfg["suites"] = r.suites;
    cfg["K"] = r.K;
    cfg["tol"] = r.tol;
    cfg["seed"] = r.seed;
    cfg["budget"] = r.budget;
    j["config"] = cfg;
    ordered_json recs = ordered_json::array();
    for (const auto& c : r.records) {
        ordered_json o;
        o["suite"] = c.suite;
        o["id"] = c.id;
        o["anchor"] = c.anchor;
        o["status"] = to_string(c.status);
        o["measured"] = values(c.measured);
        o["bound"] = values(c.bound);
        o["runtime"] = with_runtimes ? c.runtime : 0.0;
        o["note"] = c.note;
        recs.push_back(std::move(o));
    }
    j["records"] = std::move(recs);
    const ReportSummary s = r.summary();
    j["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"info", s.info}, {"skipped", s.skipped}, {"total", s.total()}};
    return j.dump(indent);
}

VerificationReport report_from_json(const std::string& s) {
    const json j = json::parse(s);
    VerificationReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != VerificationReport::kSchemaVersion)
        throw std::invalid_argument("unsupported report schema version " + std::to_string(r.schema_version));
    const json& cfg = j.at("config");
    r.algebra = cfg.at("algebra").get<std::string>();
    r.suites = cfg.at("suites").get<std::vector<std::string>>();
    r.K = cfg.at("K").get<int>();
    r.tol = cfg.at("tol").get<double>();
    r.seed = cfg.at("seed").get<unsigned>();
    r.budget = cfg.at("budget").get<long>();
    for (const json& o : j.at("records")) {
        CheckRecord c;
        c.suite = o.at("suite").get<std::string>();
        c.id = o.at("id").get<std::string>();
        c.anchor = o.at("anchor").get<std::string>();
        c.status = status_from_string(o.at("status").get<std::string>());
        c.measured = read_values(o.at("measured"));
        c.bound = read_values(o.at("bound"));
        c.runtime = o.at("runtime").get<double>();
        c.note = o.value("note", "");
        r.records.push_back(std::move(c));
    }
    return r;
}

std::string report_to_text(const VerificationReport& r) {
    std::ostringstream os;
    os << std::left;
    for (const auto& c : r.records) {
        os << std::setw(8) << to_string(c.status) << std::setw(10) << c.suite << std::setw(56) << c.id << " ";
        std::string m = join_values(c.measured), b = join_values(c.bound);
        os << m;
        if (!b.empty()) os << "  | bound " << b;
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
    const ReportSummary s = r.summary();
    os << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.info << " info, " << s.skipped
       << " skipped\n";
    return os.str();
}

bool equivalent(const VerificationReport& a, const VerificationReport& b) {
    if (a.schema_version != b.schema_version || a.algebra != b.algebra || a.suites != b.suites || a.K != b.K ||
        a.tol != b.tol || a.seed != b.seed || a.budget != b.budget || a.records.size() != b.records.size())
        return false;
    for (size_t i = 0; i < a.records.size(); ++i) {
        const CheckRecord &x = a.records[i], &y = b.records[i];
        if (x.suite != y.suite || x.id != y.id || x.anchor != y.anchor || x.status != y.status ||
            x.note != y.note || !same(x.measured, y.measured) || !same(x.bound, y.bound))
            return false;
    }
    return true;
}

}  // namespace tlcat
