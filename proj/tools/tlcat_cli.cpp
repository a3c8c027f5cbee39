// tlcat: run verification suites and emit tables.
//
// exit codes: 0 pass, 1 check failures, 2 usage, 3 resource

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <new>
#include <sstream>

#include "tlcat/commutator.hpp"
#include "tlcat/concrete_rep.hpp"
#include "tlcat/report.hpp"
#include "tlcat/spectral.hpp"
#include "tlcat/suites.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string render(const Table& t, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        auto line = [&](const std::vector<std::string>& v) {
            for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
            os << "\n";
        };
        line(t.header);
        for (const auto& r : t.rows) line(r);
    } else {
        std::vector<size_t> w(t.header.size());
        for (size_t i = 0; i < w.size(); ++i) w[i] = t.header[i].size();
        for (const auto& r : t.rows)
            for (size_t i = 0; i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
        auto line = [&](const std::vector<std::string>& v) {
            for (size_t i = 0; i < v.size(); ++i) {
                os << v[i];
                if (i + 1 < v.size()) os << std::string(w[i] - v[i].size() + 2, ' ');
            }
            os << "\n";
        };
        line(t.header);
        for (const auto& r : t.rows) line(r);
    }
    return os.str();
}

Table dims_table(int dimB, int kmax) {
    Table t{{"k", "d_k", "Pi_k"}, {}};
    for (int k = 0; k <= kmax; ++k) {
        const mpz_class d = tlcat::rep_dimension(dimB, k);
        if (d != tlcat::rep_dimension_recursive(dimB, k)) throw std::logic_error("d_k recursion disagrees with Pi_k");
        t.rows.push_back({std::to_string(k), d.get_str(), tlcat::pi_poly(k).to_string()});
    }
    return t;
}

Table f_table(int lo, int hi) {
    Table t{{"delta2", "delta", "q", "C", "f", "g", "valid"}, {}};
    for (int d2 = lo; d2 <= hi; ++d2) {
        const tlcat::LowerBoundConstants c = tlcat::lower_bound_constants(std::sqrt(static_cast<double>(d2)));
        t.rows.push_back({std::to_string(d2), num(c.delta), num(c.q), num(c.Cq), num(c.f), num(c.g),
                          c.valid ? "1" : "0"});
    }
    return t;
}

int write_out(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path);
    if (!f) {
        std::cerr << "cannot write " << path << "\n";
        return kExitUsage;
    }
    f << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temperley-Lieb category and quantum automorphism group verification"};
    app.require_subcommand(1);

    tlcat::RunConfig cfg;
    cfg.output = "tlcat_report.json";
    std::string format = "json";
    bool no_runtimes = false;
    bool quiet = false;
    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::string config_path;
    verify->add_option("--config", config_path, "key=value file; command-line flags take precedence")
        ->check(CLI::ExistingFile);
    verify->add_option("--algebra", cfg.algebra, "block sizes of B, e.g. 1,1,1,1,1 or 2,2 (default per suite)");
    verify->add_option("--suites", cfg.suites, "qarith,diagrams,tl,jw,rho,decomp,bounds,rd,spectral or all")
        ->delimiter(',');
    verify->add_option("--K", cfg.K, "truncation level")->capture_default_str();
    verify->add_option("--tol", cfg.tol, "matrix tolerance")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    auto* budget_opt = verify->add_option("--budget", cfg.budget, "max (dim B)^k (env TLCAT_BUDGET)");
    verify->add_option("--output", cfg.output, "report path, - for stdout")->capture_default_str();
    verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    verify->add_option("--workers", cfg.workers, "suites run concurrently")->capture_default_str();
    verify->add_flag("--no-runtimes", no_runtimes, "write zero runtimes (byte-stable reports)");
    verify->add_flag("--quiet", quiet, "no text table on stdout");

    auto* table = app.add_subcommand("table", "emit data tables");
    table->require_subcommand(1);
    int dimB = 5, kmax = 6;
    std::string table_format = "csv", table_out;
    auto* dims = table->add_subcommand("dims", "d_k = Pi_k(dim B)");
    dims->add_option("--dimB", dimB)->capture_default_str()->check(CLI::PositiveNumber);
    dims->add_option("--kmax", kmax)->capture_default_str()->check(CLI::NonNegativeNumber);
    dims->add_option("--format", table_format)->check(CLI::IsMember({"csv", "text"}))->capture_default_str();
    dims->add_option("--output", table_out);

    auto* bounds = app.add_subcommand("bounds", "constants of the lower bound");
    bounds->require_subcommand(1);
    std::string grid = "8:100";
    auto* fcmd = bounds->add_subcommand("f", "C(q), f, g on a grid of delta^2");
    fcmd->add_option("--grid", grid, "lo:hi in delta^2, step 1")->capture_default_str();
    fcmd->add_option("--format", table_format)->check(CLI::IsMember({"csv", "text"}))->capture_default_str();
    fcmd->add_option("--output", table_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (verify->parsed() && !config_path.empty()) {
            for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(config_path)) {
                if (item.name == "config") throw tlcat::ConfigError("config files do not nest");
                CLI::Option* opt = verify->get_option_no_throw("--" + item.name);
                if (opt == nullptr) throw tlcat::ConfigError("unknown config key: " + item.name);
                if (opt->count() > 0) continue;
                opt->add_result(item.inputs);
                opt->run_callback();
            }
        }
        if (verify->parsed()) {
            if (budget_opt->count() == 0) cfg.budget = tlcat::budget_from_env();
            const tlcat::VerificationReport report = tlcat::run(cfg);
            const std::string body = format == "json" ? tlcat::report_to_json(report, !no_runtimes) + "\n"
                                                      : tlcat::report_to_text(report);
            if (int rc = write_out(body, cfg.output)) return rc;
            const bool to_stdout = cfg.output.empty() || cfg.output == "-";
            if (!quiet && !to_stdout) std::cout << tlcat::report_to_text(report);
            return report.exit_code();
        }
        if (dims->parsed()) return write_out(render(dims_table(dimB, kmax), table_format), table_out);
        if (fcmd->parsed()) {
            const auto colon = grid.find(':');
            if (colon == std::string::npos) throw tlcat::ConfigError("grid must be lo:hi");
            const int lo = std::stoi(grid.substr(0, colon)), hi = std::stoi(grid.substr(colon + 1));
            if (lo < 4 || hi < lo) throw tlcat::ConfigError("grid needs 4 <= lo <= hi");
            return write_out(render(f_table(lo, hi), table_format), table_out);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const tlcat::ResourceError& e) {
        std::cerr << "resource: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource: out of memory\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
