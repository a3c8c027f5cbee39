#include "tlcat/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <new>
#include <random>
#include <set>
#include <thread>

#include "tlcat/commutator.hpp"
#include "tlcat/qarith.hpp"
#include "tlcat/rd_harness.hpp"
#include "tlcat/spectral.hpp"
#include "tlcat/tl_elements.hpp"

namespace tlcat {

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"qarith", "diagrams", "tl",     "jw",      "rho",
                                                   "decomp", "bounds",   "rd",     "spectral"};
    return names;
}

std::vector<std::string> expand_suites(const std::vector<std::string>& names) {
    std::set<std::string> want;
    for (const auto& n : names) {
        if (n == "all") {
            want.insert(suite_names().begin(), suite_names().end());
        } else if (std::find(suite_names().begin(), suite_names().end(), n) != suite_names().end()) {
            want.insert(n);
        } else {
            throw ConfigError("unknown suite: " + n);
        }
    }
    std::vector<std::string> out;
    for (const auto& n : suite_names())
        if (want.count(n)) out.push_back(n);
    return out;
}

std::string default_algebra(const std::string& suite) { return suite == "bounds" ? "2,2" : "1,1,1,1,1"; }

void validate(const RunConfig& cfg) {
    if (!(cfg.tol > 0.0 && cfg.tol <= 1e-3)) throw ConfigError("tol must lie in (0, 1e-3]");
    if (cfg.K < 1) throw ConfigError("K must be at least 1");
    if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
    if (cfg.budget < 1) throw ConfigError("budget must be positive");
    expand_suites(cfg.suites);
    std::vector<std::string> algebras;
    if (!cfg.algebra.empty()) algebras.push_back(cfg.algebra);
    else
        for (const auto& s : expand_suites(cfg.suites)) algebras.push_back(default_algebra(s));
    for (const auto& a : algebras) {
        AlgebraSpec spec;
        try {
            spec = AlgebraSpec::parse(a);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("bad algebra: ") + e.what());
        }
        if (cfg.budget < static_cast<long>(spec.dimB) * spec.dimB)
            throw ResourceError("budget " + std::to_string(cfg.budget) + " is below (dim B)^2 for " + a);
    }
}

namespace {

// ---------------------------------------------------------------- helpers

class Suite {
public:
    Suite(std::string name, const RunConfig& cfg) : name_(std::move(name)), cfg_(cfg) {}

    template <class F>
    void check(const std::string& id, const std::string& anchor, F&& body) {
        CheckRecord r;
        r.suite = name_;
        r.id = id;
        r.anchor = anchor;
        r.status = Status::Pass;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const ResourceError& e) {
            r.status = Status::Skipped;
            r.note = e.what();
        } catch (const std::bad_alloc&) {
            r.status = Status::Skipped;
            r.note = "out of memory";
        } catch (const std::exception& e) {
            r.status = Status::Fail;
            r.note = e.what();
        }
        r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        records.push_back(std::move(r));
    }

    const RunConfig& cfg() const { return cfg_; }
    std::string algebra() const { return cfg_.algebra.empty() ? default_algebra(name_) : cfg_.algebra; }
    unsigned seed(unsigned salt) const { return cfg_.seed * 7919u + salt; }

    std::vector<CheckRecord> records;

private:
    std::string name_;
    const RunConfig& cfg_;
};

void expect_le(CheckRecord& r, const std::string& key, double measured, double bound) {
    r.measured[key] = measured;
    r.bound[key] = bound;
    if (!(measured <= bound)) r.status = Status::Fail;
}

void expect_ge(CheckRecord& r, const std::string& key, double measured, double bound) {
    r.measured[key] = measured;
    r.bound[key] = bound;
    if (!(measured >= bound)) r.status = Status::Fail;
}

/// mismatch counter for families of exact identities
struct Tally {
    int cases = 0, bad = 0;
    std::string first;
    void add(bool ok, const std::string& label) {
        ++cases;
        if (!ok && bad++ == 0) first = label;
    }
    void finish(CheckRecord& r) const {
        r.measured["cases"] = cases;
        expect_le(r, "mismatches", bad, 0);
        if (bad) r.note = "first mismatch at " + first;
    }
};

std::string triple(int n, int k, int l) {
    return "(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(l) + ")";
}

double sqrt_q3(double q) { return std::sqrt(qint(3, q)); }

// ---------------------------------------------------------------- qarith

void suite_qarith(Suite& s) {
    const AlgebraSpec spec = AlgebraSpec::parse(s.algebra());
    s.check("q from delta", "q-numbers: delta = q + 1/q", [&](CheckRecord& r) {
        double worst = 0.0;
        for (double d : {2.0, 2.1, std::sqrt(5.0), std::sqrt(8.0), 3.0, 10.0, 100.0}) {
            const double q = q_from_delta(d).q;
            if (!(q > 0.0 && q <= 1.0)) throw std::runtime_error("q outside (0,1]");
            worst = std::max(worst, std::abs(q + 1.0 / q - d) / d);
        }
        expect_le(r, "rel_error", worst, 1e-13);
    });
    s.check("q-integers palindromic, [a] at q=1 is a", "q-numbers [a]_q", [&](CheckRecord& r) {
        Tally t;
        for (int a = 1; a <= 40; ++a) {
            const QRationalFunction x = q_integer(a);
            t.add(x.is_laurent() && x.numerator().is_palindromic() && x.eval(1.0) == a, "a=" + std::to_string(a));
        }
        t.finish(r);
    });
    s.check("quantum dimension m_k = [2k+1] = S_2k(delta)", "quantum dimension m_k", [&](CheckRecord& r) {
        Tally t;
        double worst = 0.0;
        for (int k = 0; k <= 10; ++k) {
            t.add(quantum_dimension(k) == q_integer(2 * k + 1), "k=" + std::to_string(k));
            const double a = quantum_dimension(k).eval(spec.q), b = chebyshev_S(2 * k).eval(spec.delta);
            worst = std::max(worst, std::abs(a - b) / b);
        }
        t.finish(r);
        expect_le(r, "rel_error_S2k", worst, 1e-12);
    });
    s.check("C(k,k,0) = 1, k <= 4", "coupling constant C_(n,k,l)", [&](CheckRecord& r) {
        Tally t;
        for (int k = 0; k <= 4; ++k) t.add(coupling_constant(k, k, 0).is_one(), "k=" + std::to_string(k));
        t.finish(r);
    });
    s.check("C(1,1,1) = [4]/[2]^3 and C(1,k+1,k) = [2k+3]/([3][2k+1])", "coupling constant C_(n,k,l)",
            [&](CheckRecord& r) {
                Tally t;
                t.add(coupling_constant(1, 1, 1) == q_integer(4) / q_integer(2).pow(3), "(1,1,1)");
                for (int k = 0; k <= 5; ++k)
                    t.add(coupling_constant(1, k + 1, k) == q_integer(2 * k + 3) / (q_integer(3) * q_integer(2 * k + 1)),
                          triple(1, k + 1, k));
                t.finish(r);
            });
    s.check("non-admissible triples rejected", "fusion rules", [&](CheckRecord& r) {
        Tally t;
        for (auto [n, k, l] : {std::tuple{1, 1, 3}, std::tuple{2, 0, 1}, std::tuple{1, 3, 1}}) {
            bool threw = false;
            try {
                fusion_defect(n, k, l);
            } catch (const FusionError&) {
                threw = true;
            }
            t.add(threw && !admissible(n, k, l), triple(n, k, l));
        }
        t.finish(r);
    });
    s.check("D0 <= C <= 1 on n,k <= 6", "uniform bounds on coupling constants", [&](CheckRecord& r) {
        double lo = 1e300, hi = 0.0;
        for (int n = 0; n <= 6; ++n)
            for (int k = 0; k <= 6; ++k)
                for (int l = std::abs(n - k); l <= n + k; ++l) {
                    const double c = coupling_constant_numeric(n, k, l, spec.q);
                    lo = std::min(lo, c), hi = std::max(hi, c);
                }
        expect_le(r, "max_C", hi, 1.0 + 1e-12);
        expect_ge(r, "D0", lo, 0.0);
        r.note = "D0 is the empirical minimum at q(" + spec.to_string() + ")";
    });
    s.check("alpha_l sandwich", "alpha_l bounds", [&](CheckRecord& r) {
        double worst = -1e300;
        for (double q : {0.1, 0.25, 0.4, spec.q, 0.6, 0.9})
            for (int l = 0; l <= 30; ++l) {
                const double a = ao_alpha(l, q), up = 1.0 / std::sqrt(l + 1.0), lo = (1.0 - q * q) * up;
                worst = std::max({worst, a - up, lo - a});
            }
        expect_le(r, "max_violation", worst, 1e-14);
    });
}

// -------------------------------------------------------------- diagrams

TLDiagram random_diagram(int k, int l, std::mt19937& rng) {
    const auto all = enumerate_diagrams(k, l);
    return all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
}

void suite_diagrams(Suite& s) {
    s.check("Catalan counts, k + l <= 14", "noncrossing pairings", [&](CheckRecord& r) {
        Tally t;
        for (int n = 0; n <= 14; n += 2)
            for (int k = 0; k <= n; ++k) {
                const auto all = enumerate_diagrams(k, n - k);
                std::set<std::uint64_t> codes;
                bool ok = all.size() == catalan(n / 2);
                for (const auto& d : all) {
                    codes.insert(d.code());
                    ok = ok && TLDiagram::from_code(d.code()) == d;
                }
                t.add(ok && codes.size() == all.size(), "(" + std::to_string(k) + "," + std::to_string(n - k) + ")");
            }
        t.finish(r);
    });
    s.check("composition associative with loop counts", "diagram composition", [&](CheckRecord& r) {
        std::mt19937 rng(s.seed(11));
        std::uniform_int_distribution<int> sz(0, 3);
        Tally t;
        for (int i = 0; i < 200; ++i) {
            const int a = 2 * sz(rng), b = 2 * sz(rng), c = 2 * sz(rng), d = 2 * sz(rng);
            const TLDiagram x = random_diagram(c, d, rng), y = random_diagram(b, c, rng), z = random_diagram(a, b, rng);
            const Composition xy = compose_diagrams(x, y), yz = compose_diagrams(y, z);
            const Composition l = compose_diagrams(xy.result, z), rr = compose_diagrams(x, yz.result);
            t.add(l.result == rr.result && xy.loops + l.loops == yz.loops + rr.loops, "trial " + std::to_string(i));
        }
        t.finish(r);
    });
    s.check("adjoint is an involutive anti-homomorphism", "diagram composition", [&](CheckRecord& r) {
        std::mt19937 rng(s.seed(12));
        std::uniform_int_distribution<int> sz(0, 3);
        Tally t;
        for (int i = 0; i < 200; ++i) {
            const int par = static_cast<int>(rng() % 2);
            const int a = par + 2 * sz(rng), b = par + 2 * sz(rng), c = par + 2 * sz(rng);
            const TLDiagram x = random_diagram(b, c, rng), y = random_diagram(a, b, rng);
            const Composition xy = compose_diagrams(x, y);
            const Composition yx = compose_diagrams(adjoint_diagram(y), adjoint_diagram(x));
            t.add(adjoint_diagram(adjoint_diagram(x)) == x && adjoint_diagram(xy.result) == yx.result &&
                      xy.loops == yx.loops,
                  "trial " + std::to_string(i));
        }
        t.finish(r);
    });
    s.check("interchange law for tensor and composition", "diagram composition", [&](CheckRecord& r) {
        std::mt19937 rng(s.seed(13));
        std::uniform_int_distribution<int> sz(0, 2);
        Tally t;
        for (int i = 0; i < 200; ++i) {
            const int a1 = 2 * sz(rng), b1 = 2 * sz(rng), c1 = 2 * sz(rng);
            const int a2 = 1 + 2 * sz(rng), b2 = 1 + 2 * sz(rng), c2 = 1 + 2 * sz(rng);
            const TLDiagram x1 = random_diagram(b1, c1, rng), y1 = random_diagram(a1, b1, rng);
            const TLDiagram x2 = random_diagram(b2, c2, rng), y2 = random_diagram(a2, b2, rng);
            const Composition lhs = compose_diagrams(tensor_diagrams(x1, x2), tensor_diagrams(y1, y2));
            const Composition c_1 = compose_diagrams(x1, y1), c_2 = compose_diagrams(x2, y2);
            t.add(lhs.result == tensor_diagrams(c_1.result, c_2.result) && lhs.loops == c_1.loops + c_2.loops,
                  "trial " + std::to_string(i));
        }
        t.finish(r);
    });
    s.check("partner list round trip", "noncrossing pairings", [&](CheckRecord& r) {
        Tally t;
        for (const auto& d : enumerate_diagrams(4, 6)) {
            std::vector<int> p = d.partner_list();
            for (int& x : p) --x;
            t.add(TLDiagram(d.bottom(), d.top(), p) == d && is_noncrossing(4, 6, p), d.render());
        }
        t.finish(r);
    });
}

// -------------------------------------------------------------------- tl

void suite_tl(Suite& s) {
    ExactCalc calc;
    s.check("t(k,l)^* t(k,l) = 1, k + l <= 4", "generators of the 2-cabled TL category", [&](CheckRecord& r) {
        Tally t;
        for (int k = 0; k <= 4; ++k)
            for (int l = 0; k + l <= 4; ++l)
                t.add(adjoint(calc.generator_t(k, l)) * calc.generator_t(k, l) == calc.identity(k + l),
                      std::to_string(k) + "," + std::to_string(l));
        t.finish(r);
    });
    s.check("t(k,l+1)^* t(k+1,l) = delta^-1", "generators of the 2-cabled TL category", [&](CheckRecord& r) {
        Tally t;
        for (int k = 0; k <= 3; ++k)
            for (int l = 0; k + l <= 3; ++l)
                t.add(adjoint(calc.generator_t(k, l + 1)) * calc.generator_t(k + 1, l) ==
                          calc.identity(k + l + 1).scaled(QScale::qint(2, -2)),
                      std::to_string(k) + "," + std::to_string(l));
        t.finish(r);
    });
    s.check("m m^* = delta^2, nu^* nu = 1, p_2 = 1 - nu nu^*", "structure maps m, nu", [&](CheckRecord& r) {
        Tally t;
        t.add(calc.m() * calc.m_star() == calc.identity(2).scaled(QScale::qint(2, 4)), "m m*");
        t.add(adjoint(calc.nu()) * calc.nu() == calc.identity(0), "nu* nu");
        t.add(calc.jw(2) == calc.identity(2) - calc.nu() * adjoint(calc.nu()), "p_2");
        t.add(calc.m_star() == calc.pad(1, calc.t(1), 1).scaled(ZLaurent::qint(2)), "m* = [2](1 x t_1 x 1)");
        t.finish(r);
    });
    s.check("t_2 from m^* nu, two-sided and one-sided", "the isometries t_r", [&](CheckRecord& r) {
        Tally t;
        t.add(calc.t2_from_m() == calc.t(2), "two-sided");
        t.add(calc.t2_one_sided(false) == calc.t(2), "p_2 x 1");
        t.add(calc.t2_one_sided(true) == calc.t(2), "1 x p_2");
        t.finish(r);
        r.note = "normalization [3]^{-1/2} in all three";
    });
    s.check("t_2(k+l) two-parameter recursion, k + l <= 3", "the isometries t_r", [&](CheckRecord& r) {
        Tally t;
        for (int k = 1; k <= 2; ++k)
            for (int l = 1; k + l <= 3; ++l)
                t.add(calc.t_even_recursive(k, l) == calc.t(2 * (k + l)), std::to_string(k) + "," + std::to_string(l));
        t.finish(r);
    });
    s.check("t_2k one-sided recursions, k <= 3", "the isometries t_r", [&](CheckRecord& r) {
        Tally t;
        for (int k = 2; k <= 3; ++k)
            for (Side side : {Side::L, Side::R})
                t.add(calc.t_even_one_sided(k, side) == calc.t(2 * k),
                      "k=" + std::to_string(k) + (side == Side::L ? " L" : " R"));
        t.finish(r);
    });
    s.check("odd t_r from t_(r-1) and m^*, r <= 5", "the isometries t_r", [&](CheckRecord& r) {
        Tally t;
        for (int sh = 0; sh <= 2; ++sh) {
            const int rr = 2 * sh + 1;
            ExactElement rhs = calc.pad(2, calc.t(2 * sh), 2) * calc.m_star();
            rhs = calc.left_jw(rr, rr + 1, calc.left_jw(rr, 1, rhs));
            rhs = rhs.scaled(QScale::qint(rr, 1) * QScale::qint(rr + 1, -1) * QScale::qint(2, -1));
            t.add(calc.pad(1, calc.t(rr), 1) == rhs, "r=" + std::to_string(rr));
        }
        t.finish(r);
    });
    s.check("t_r^* t_r = 1, r <= 6", "the isometries t_r", [&](CheckRecord& r) {
        Tally t;
        for (int rr = 0; rr <= 6; ++rr)
            t.add(adjoint(calc.t(rr)) * calc.t(rr) == calc.identity(0), "r=" + std::to_string(rr));
        t.finish(r);
    });
}

// -------------------------------------------------------------------- jw

void suite_jw(Suite& s) {
    ExactCalc calc;
    constexpr int kMax = 8;
    s.check("Frenkel-Khovanov equals Wenzl, y <= 8", "Jones-Wenzl projection", [&](CheckRecord& r) {
        Tally t;
        for (int y = 0; y <= kMax; ++y) t.add(calc.jw(y) == calc.jw_wenzl(y), "y=" + std::to_string(y));
        t.finish(r);
    });
    s.check("p^2 = p and p^* = p, y <= 8", "Jones-Wenzl projection", [&](CheckRecord& r) {
        Tally t;
        for (int y = 0; y <= kMax; ++y) {
            const ExactElement& p = calc.jw(y);
            t.add(p * p == p && adjoint(p) == p, "y=" + std::to_string(y));
        }
        t.finish(r);
    });
    s.check("E_i p = p E_i = 0, y <= 8", "Jones-Wenzl projection", [&](CheckRecord& r) {
        Tally t;
        for (int y = 2; y <= kMax; ++y)
            for (int i = 0; i + 1 < y; ++i) {
                const ExactElement e = calc.diagram(capcup_diagram(y, i));
                t.add((e * calc.jw(y)).is_zero() && (calc.jw(y) * e).is_zero(),
                      "y=" + std::to_string(y) + " i=" + std::to_string(i));
            }
        t.finish(r);
    });
    s.check("absorption (p_x x p_y) p_(x+y) = p_(x+y), x + y <= 8", "Jones-Wenzl absorption", [&](CheckRecord& r) {
        Tally t;
        for (int x = 0; x <= kMax; ++x)
            for (int y = 0; x + y <= kMax; ++y) {
                const ExactElement& p = calc.jw(x + y);
                const ExactElement px = tensor(calc.jw(x), calc.jw(y));
                t.add(px * p == p && p * px == p, std::to_string(x) + "," + std::to_string(y));
            }
        t.finish(r);
    });
    s.check("closure of p_y is [y+1], y <= 8", "Jones-Wenzl projection", [&](CheckRecord& r) {
        Tally t;
        for (int y = 1; y <= kMax; ++y) {
            const ExactElement cups = calc.diagram(nested_cups(y));
            const ExactElement tr = adjoint(cups) * (calc.pad(0, calc.jw(y), y) * cups);
            t.add(tr == calc.identity(0).scaled(ZLaurent::qint(y + 1)), "y=" + std::to_string(y));
        }
        t.finish(r);
    });
}

// ------------------------------------------------------------------- rho

void suite_rho(Suite& s) {
    ExactCalc calc;
    s.check("rho^* rho = C p_2l, n,k <= 3 (identity coefficient route)", "norm of the intertwiner rho",
            [&](CheckRecord& r) {
                Tally t;
                for (int n = 0; n <= 3; ++n)
                    for (int k = 0; k <= 3; ++k)
                        for (int l = std::abs(n - k); l <= n + k; ++l)
                            t.add(rho_gram_reduced(calc, n, k, l) ==
                                      QScale::from_monomial(coupling_monomial(n, k, l)).to_surd(),
                                  triple(n, k, l));
                t.finish(r);
            });
    s.check("rho^* rho = C p_2l, n + k <= 4 (full product)", "norm of the intertwiner rho", [&](CheckRecord& r) {
        Tally t;
        for (int n = 0; n <= 3; ++n)
            for (int k = 0; n + k <= 4 && k <= 3; ++k)
                for (int l = std::abs(n - k); l <= n + k; ++l) {
                    const ExactElement c = calc.jw(2 * l).scaled(QScale::from_monomial(coupling_monomial(n, k, l)));
                    t.add(rho_gram_full(calc, n, k, l) == c, triple(n, k, l));
                }
        t.finish(r);
    });
    s.check("rho_0^(k x k) = t_2k and rho_(n+k)^(n x k) = p_2(n+k)", "the intertwiner rho", [&](CheckRecord& r) {
        Tally t;
        for (int k = 0; k <= 3; ++k) t.add(calc.rho(k, k, 0) == calc.t(2 * k), "t k=" + std::to_string(k));
        for (int n = 0; n <= 3; ++n)
            for (int k = 0; n + k <= 4; ++k) t.add(calc.rho(n, k, n + k) == calc.jw(2 * (n + k)), triple(n, k, n + k));
        t.finish(r);
    });
    s.check("phi family closed forms, k <= 3", "the isometries phi", [&](CheckRecord& r) {
        Tally t;
        for (int k = 1; k <= 3; ++k)
            for (int alpha : {1, 0, -1})
                for (Side side : {Side::L, Side::R})
                    t.add(calc.phi(alpha, side, k) == calc.phi_closed_form(alpha, side, k),
                          "k=" + std::to_string(k) + " alpha=" + std::to_string(alpha) + (side == Side::L ? " L" : " R"));
        t.add(calc.phi(-1, Side::L, 1) == calc.jw(2), "phi(-1) k=1 is p_2");
        t.finish(r);
    });
    s.check("phi^* phi = p_2k, k <= 2", "the isometries phi", [&](CheckRecord& r) {
        Tally t;
        for (int k = 1; k <= 2; ++k)
            for (int alpha : {1, 0, -1})
                for (Side side : {Side::L, Side::R}) {
                    const ExactElement ph = calc.phi(alpha, side, k);
                    t.add(adjoint(ph) * ph == calc.jw(2 * k),
                          "k=" + std::to_string(k) + " alpha=" + std::to_string(alpha) + (side == Side::L ? " L" : " R"));
                }
        t.finish(r);
    });

    const AlgebraSpec spec = AlgebraSpec::parse(s.algebra());
    s.check("structure maps on " + spec.to_string(), "structure maps m, nu", [&](CheckRecord& r) {
        ConcreteRep rep(spec, s.cfg().budget);
        const StructureCheck c = check_structure_maps(rep);
        expect_le(r, "m_mstar", c.mmstar, s.cfg().tol);
        expect_le(r, "nu_norm", c.nu_norm, s.cfg().tol);
        expect_le(r, "assoc", c.assoc, s.cfg().tol);
        expect_le(r, "unit", c.unit, s.cfg().tol);
        expect_le(r, "frobenius", c.frobenius, s.cfg().tol);
    });
    s.check("represented rho^* rho = C p_2l on " + spec.to_string() + ", n + k <= 3", "norm of the intertwiner rho",
            [&](CheckRecord& r) {
                ConcreteRep rep(spec, s.cfg().budget);
                double worst = 0.0;
                for (int n = 0; n <= 3; ++n)
                    for (int k = 0; n + k <= 3; ++k)
                        for (int l = std::abs(n - k); l <= n + k; ++l) {
                            const Eigen::MatrixXd R = rep.represent(calc.rho(n, k, l));
                            const double c = coupling_constant_numeric(n, k, l, rep.q());
                            worst = std::max(worst, (R.transpose() * R - c * rep.represent_jw(l)).cwiseAbs().maxCoeff());
                        }
                expect_le(r, "max_residual", worst, s.cfg().tol);
            });
}

// ---------------------------------------------------------------- decomp

void suite_decomp(Suite& s) {
    const AlgebraSpec spec = AlgebraSpec::parse(s.algebra());
    std::unique_ptr<ConcreteRep> rep_ptr;
    s.check("represent " + spec.to_string(), "finite quantum space (B, psi)", [&](CheckRecord& r) {
        rep_ptr = std::make_unique<ConcreteRep>(spec, s.cfg().budget);
        r.measured["dimB"] = spec.dimB;
        r.measured["q"] = spec.q;
        r.status = Status::Info;
    });
    if (!rep_ptr) return;
    const ConcreteRep& rep = *rep_ptr;
    for (int k = 1; k <= 4; ++k) {
        s.check("rank p_" + std::to_string(2 * k) + " = Pi_" + std::to_string(k) + "(dim B)",
                "dimension d_k = Pi_k(dim B)", [&](CheckRecord& r) {
                    const int d = k <= 3 ? rep.irrep_dimension(k) : rep.irrep_dimension_compressed(k);
                    r.measured["rank"] = d;
                    const double want = rep_dimension(rep.dimB(), k).get_d();
                    r.bound["Pi_k"] = want;
                    if (d != want) r.status = Status::Fail;
                });
    }
    s.check("F_1 unitary, sum_j F_1 e_j x e_j = [3]^{1/2} t_2", "the matrix F_1", [&](CheckRecord& r) {
        const Eigen::MatrixXd F = rep.F1();
        const Eigen::MatrixXd& V = rep.irrep_basis(1);
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(F.rows(), F.cols());
        Eigen::VectorXd w = Eigen::VectorXd::Zero(rep.power(2));
        for (long j = 0; j < F.cols(); ++j) w += kron(V * F.col(j), V.col(j));
        expect_le(r, "unitary", (F * F.transpose() - I).cwiseAbs().maxCoeff(), s.cfg().tol);
        expect_le(r, "t2", (w - sqrt_q3(rep.q()) * rep.t_vector(2)).cwiseAbs().maxCoeff(), s.cfg().tol);
    });
    ExactCalc calc;
    for (int k = 1; k <= 3; ++k) {
        std::vector<IdentityResult> res;
        s.check("block formula evaluations k=" + std::to_string(k), "block decomposition of T", [&](CheckRecord& r) {
            res = verify_appendix_identities(calc, rep, k, s.cfg().tol, s.seed(100 + k));
            r.status = Status::Info;
            r.measured["identities"] = static_cast<double>(res.size());
        });
        for (const auto& id : res)
            s.check(id.id, "block decomposition of T", [&](CheckRecord& r) {
                if (id.exact) {
                    r.measured["exact"] = id.pass ? 1 : 0;
                    r.bound["exact"] = 1;
                    r.measured["numeric_residual"] = id.residual;
                    if (!id.pass) r.status = Status::Fail;
                } else {
                    expect_le(r, "residual", id.residual, s.cfg().tol);
                }
            });
    }
}

// ---------------------------------------------------------------- bounds

void suite_bounds(Suite& s) {
    const double tol = s.cfg().tol;
    s.check("f(sqrt 8) = 0.1111", "constant f(delta)", [&](CheckRecord& r) {
        const LowerBoundConstants c = lower_bound_constants(std::sqrt(8.0));
        r.measured["f"] = c.f;
        expect_le(r, "abs_error", std::abs(c.f - 0.1111), 5e-4);
    });
    for (int d2 : {5, 6, 7}) {
        s.check("[3]^{1/2} f <= -0.4386 at delta^2=" + std::to_string(d2), "failure range delta^2 in {5,6,7}",
                [&](CheckRecord& r) {
                    const LowerBoundConstants c = lower_bound_constants(std::sqrt(static_cast<double>(d2)));
                    r.measured["C"] = c.Cq;
                    expect_le(r, "sqrt3_f", sqrt_q3(c.q) * c.f, -0.4386 + 1e-3);
                    if (!c.valid) r.note = "C(q) < 0, f is not real";
                });
    }
    s.check("f = g and f increasing on delta^2 = 8..100", "constant f(delta)", [&](CheckRecord& r) {
        double prev = -1e300, worst_step = 1e300, fg = 0.0;
        for (int d2 = 8; d2 <= 100; ++d2) {
            const LowerBoundConstants c = lower_bound_constants(std::sqrt(static_cast<double>(d2)));
            worst_step = std::min(worst_step, c.f - prev);
            fg = std::max(fg, std::abs(c.f - c.g));
            prev = c.f;
        }
        expect_ge(r, "min_increment", worst_step, 1e-12);
        expect_le(r, "f_minus_g", fg, 1e-12);
    });

    const AlgebraSpec spec = AlgebraSpec::parse(s.algebra());
    const int K = s.cfg().K;
    const double q = spec.q;
    std::unique_ptr<ConcreteRep> rep_ptr;
    std::unique_ptr<TOperator> T_ptr;
    s.check("truncated T on " + spec.to_string() + ", K=" + std::to_string(K), "commutator operator T",
            [&](CheckRecord& r) {
                if (spec.dimB < 5) throw ConfigError("bound suites need dim B >= 5");
                rep_ptr = std::make_unique<ConcreteRep>(spec, s.cfg().budget);
                T_ptr = std::make_unique<TOperator>(*rep_ptr, K);
                r.measured["dimB"] = spec.dimB;
                r.measured["q"] = q;
                r.status = Status::Info;
            });
    if (!T_ptr) return;
    const ConcreteRep& rep = *rep_ptr;
    const TOperator& T = *T_ptr;

    s.check("T xi_0 = 0", "commutator operator T", [&](CheckRecord& r) {
        expect_le(r, "residual", T.vacuum_residual(), 1e-10);
    });
    s.check("blocks land in their target spaces", "block decomposition of T", [&](CheckRecord& r) {
        double worst = 0.0;
        for (int k = 1; k <= K; ++k)
            for (int a : {1, 0, -1})
                if (T.has(k, a)) worst = std::max(worst, T.target_residual(k, a));
        expect_le(r, "residual", worst, 1e-10);
    });
    for (int k = 1; k <= std::min(K, 3); ++k) {
        const std::string ks = " k=" + std::to_string(k);
        s.check("|T(0)|, |T(-1)|, |T(0)+T(-1)|" + ks, "upper bound 2(1+q)", [&](CheckRecord& r) {
            expect_le(r, "T0", T.block_norm(k, 0), 2.0 + tol);
            expect_le(r, "Tm1", T.block_norm(k, -1),
                      2.0 * std::sqrt(qint(2 * k - 1, q) / qint(2 * k + 1, q)) + tol);
            expect_le(r, "T0_plus_Tm1", T.block_norm_sum0m(k), 2.0 * (1.0 + q) + tol);
        });
    }
    s.check("|T(0)+T(-1)| on blocks 1..K", "upper bound 2(1+q)", [&](CheckRecord& r) {
        expect_le(r, "norm", T.norm_sum0m_assembled(), 2.0 * (1.0 + q) + tol);
    });
    std::map<int, double> overlap;
    for (int k = 1; k <= 3; ++k) {
        const std::string ks = " k=" + std::to_string(k);
        FlipOverlap f;
        bool have = false;
        s.check("flip overlap" + ks, "flip overlap bound", [&](CheckRecord& r) {
            f = flip_overlap(rep, k);
            have = true;
            overlap[k] = f.norm;
            expect_le(r, "norm", f.norm, f.bound + tol);
        });
        if (!have) continue;
        s.check("three-term flip expansion" + ks, "flip overlap bound", [&](CheckRecord& r) {
            expect_le(r, "residual", f.expansion_residual, tol);
            r.measured["residual_with_c2_p2k"] = f.corrected_residual;
            if (f.expansion_residual > tol && f.corrected_residual <= tol)
                r.note = "holds only with + c2 p_2k added; the frame sum over F_1 e_i is 1 - nu nu^*";
        });
    }
    for (int k = 1; k <= K - 1; ++k) {
        s.check("sigma_min(T(+1))^2 chain k=" + std::to_string(k), "lower bound for T(+1)", [&](CheckRecord& r) {
            if (!overlap.count(k)) overlap[k] = flip_overlap(rep, k).norm;
            const double smin = T.sigma_min_plus(k);
            const double a = alpha_prefactor(1, k, q);
            expect_ge(r, "sigma_min_sq", smin * smin, 2.0 * a * a * (1.0 - overlap[k] * overlap[k]) - 1e-8);
        });
    }
    const LowerBoundConstants c8 = lower_bound_constants(std::sqrt(8.0));
    s.check("Phi-hat on interior blocks", "simplicity map Phi", [&](CheckRecord& r) {
        const Eigen::MatrixXd P = T.interior_phi_hat();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
        const double nrm = es.eigenvalues().cwiseAbs().maxCoeff();
        r.measured["dim"] = static_cast<double>(P.rows());
        r.measured["min_eigenvalue"] = es.eigenvalues().minCoeff();
        if (spec.dimB >= 8) {
            expect_le(r, "norm", nrm, 1.0 - c8.f * c8.f / 2.0 + 1e-6);
        } else {
            r.measured["norm"] = nrm;
            r.status = Status::Info;
        }
    });
    s.check("triangle chain on random xi in blocks 1..K-1", "lower bound for T", [&](CheckRecord& r) {
        const LowerBoundConstants c = lower_bound_constants(spec.delta);
        std::vector<int> blocks;
        std::vector<TPart> all, plus, rest;
        for (int k = 1; k <= K - 1; ++k) {
            blocks.push_back(k);
            for (int a : {1, 0, -1})
                if (T.has(k, a)) (a == 1 ? plus : rest).push_back({k, a}), all.push_back({k, a});
        }
        if (blocks.empty()) throw ConfigError("K must be at least 2");
        const auto G = T.gram_operator(all, blocks), Gp = T.gram_operator(plus, blocks),
                   Gr = T.gram_operator(rest, blocks);
        const long n = T.block_sum_dim(blocks);
        std::mt19937 rng(s.seed(31));
        std::normal_distribution<double> nd;
        double tri = -1e300, low = 1e300;
        for (int i = 0; i < 5; ++i) {
            Eigen::VectorXd xi(n);
            for (long j = 0; j < n; ++j) xi(j) = nd(rng);
            xi.normalize();
            const double a = std::sqrt(std::max(0.0, xi.dot(G(xi)))), b = std::sqrt(std::max(0.0, xi.dot(Gp(xi)))),
                         d = std::sqrt(std::max(0.0, xi.dot(Gr(xi))));
            tri = std::max(tri, (b - d) - a);
            low = std::min(low, (b - d) - (std::sqrt(std::max(c.Cq, 0.0)) - 2.0 * (1.0 + q)));
        }
        expect_le(r, "triangle_violation", tri, 1e-9);
        if (spec.dimB >= 8 && c.valid) {
            expect_ge(r, "chain_margin", low, -1e-6);
        } else {
            r.measured["chain_margin"] = low;
            r.status = r.status == Status::Fail ? Status::Fail : Status::Info;
        }
    });

    // the open range: data only
    for (int dim : {5, 6, 7}) {
        s.check("gap data for C(X" + std::to_string(dim) + "), K=2", "failure range delta^2 in {5,6,7}",
                [&](CheckRecord& r) {
                    ConcreteRep rp(AlgebraSpec::from_blocks(std::vector<int>(static_cast<size_t>(dim), 1)),
                                   s.cfg().budget);
                    TOperator Tk(rp, 2);
                    const double smin = Tk.sigma_min_plus(1);
                    const Eigen::MatrixXd P = Tk.interior_phi_hat();
                    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
                    r.measured["sigma_min_sq_k1"] = smin * smin;
                    r.measured["T0_plus_Tm1_k1"] = Tk.block_norm_sum0m(1);
                    r.measured["phi_hat_norm"] = es.eigenvalues().cwiseAbs().maxCoeff();
                    r.status = Status::Info;
                });
    }
}

// -------------------------------------------------------------------- rd

void suite_rd(Suite& s) {
    const AlgebraSpec spec = AlgebraSpec::parse(s.algebra());
    s.check("fusion neighbors", "fusion rules", [&](CheckRecord& r) {
        Tally t;
        t.add(fusion_neighbors(1, 1) == std::vector<int>{0, 1, 2}, "(1,1)");
        for (int n = 0; n <= 4; ++n)
            for (int l = 0; l <= 4; ++l) {
                std::vector<int> want;
                for (int k = 0; k <= n + l; ++k)
                    if (admissible(n, k, l)) want.push_back(k);
                t.add(fusion_neighbors(n, l) == want, std::to_string(n) + "," + std::to_string(l));
            }
        t.finish(r);
    });
    std::unique_ptr<ConcreteRep> rep_ptr;
    s.check("dual side of " + spec.to_string(), "dual convolution", [&](CheckRecord& r) {
        rep_ptr = std::make_unique<ConcreteRep>(spec, s.cfg().budget);
        r.measured["dimB"] = spec.dimB;
        r.status = Status::Info;
    });
    if (!rep_ptr) return;
    DualConvolution conv(*rep_ptr);
    const double q = spec.q;
    s.check("convolution associative and unital, blocks <= 2", "dual convolution", [&](CheckRecord& r) {
        const CoherenceResult c = convolution_coherence(conv, 2, 50, s.seed(41));
        r.measured["trials"] = c.trials;
        expect_le(r, "assoc", c.assoc, s.cfg().tol);
        expect_le(r, "unit", c.unit, s.cfg().tol);
    });
    s.check("l2 identity, n,k,l <= 2", "rapid decay L2 identity", [&](CheckRecord& r) {
        double worst = 0.0;
        for (int n = 0; n <= 2; ++n)
            for (int k = 0; k <= 2; ++k)
                for (int l = std::abs(n - k); l <= std::min(n + k, 2); ++l)
                    worst = std::max(worst, rd_l2_identity(conv, n, k, l, 50, s.seed(50 + 9 * n + 3 * k + l)));
        expect_le(r, "rel_deviation", worst, 1e-8);
    });
    const double D0 = empirical_D0(q);
    s.check("empirical D0 and uniform constant", "uniform bounds on coupling constants", [&](CheckRecord& r) {
        r.measured["D0"] = D0;
        r.measured["uniform_constant"] = rd_uniform_constant(q, D0);
        r.status = Status::Info;
        r.note = "estimate over n,k <= 6";
    });
    for (int n = 0; n <= 2; ++n)
        for (int k = 0; k <= 2; ++k)
            for (int l = std::abs(n - k); l <= std::min(n + k, 4); ++l)
                s.check("HS inequality " + triple(n, k, l), "Hilbert-Schmidt inequality", [&](CheckRecord& r) {
                    const HSScanRow row = hs_inequality_scan(conv, n, k, l, 50, s.seed(70 + 25 * n + 5 * k + l), D0);
                    r.measured["max_ratio"] = row.max_ratio;
                    expect_le(r, "refined_ratio", row.refined_ratio, row.bound);
                    expect_le(r, "branch_ratio", row.branch_ratio, row.branch_bound + 1e-9);
                    r.measured["margin"] = row.margin;
                });
    for (int n = 1; n <= 2; ++n)
        s.check("|x * y| <= D (2n+1) |x| |y|, n=" + std::to_string(n), "rapid decay", [&](CheckRecord& r) {
            const RDOperatorCheck c = rd_operator_check(conv, n, n == 1 ? 3 : 2, 20, s.seed(90 + n));
            r.measured["D"] = c.D;
            expect_le(r, "ratio", c.measured, c.bound);
        });
}

// -------------------------------------------------------------- spectral

void suite_spectral(Suite& s) {
    const int dimB = AlgebraSpec::parse(s.algebra()).dimB;
    s.check("Pi_k = S_2k(sqrt x), k <= 20", "character polynomials Pi_k", [&](CheckRecord& r) {
        Tally t;
        const IntPolynomial x = IntPolynomial::x_power(1);
        IntPolynomial prev({1}), cur({-1, 1});
        for (int k = 0; k <= 20; ++k) {
            t.add(pi_poly(k) == pi_from_chebyshev(k) && pi_poly(k) == (k == 0 ? prev : cur), "k=" + std::to_string(k));
            if (k >= 1) {
                IntPolynomial next = (x - IntPolynomial({2})) * cur - prev;
                prev = cur, cur = next;
            }
        }
        t.finish(r);
        r.note = "also against Pi_(k+1) = (x-2) Pi_k - Pi_(k-1)";
    });
    s.check("free Poisson moments, Catalan vs quadrature, j <= 16", "free Poisson law", [&](CheckRecord& r) {
        double worst = 0.0;
        for (int j = 0; j <= 16; ++j) {
            const double e = free_poisson_moment(j).get_d();
            worst = std::max(worst, std::abs(free_poisson_moment_quadrature(j) - e) / e);
        }
        expect_le(r, "rel_error", worst, 1e-9);
    });
    s.check("orthonormality, k,l <= 8", "free Poisson law", [&](CheckRecord& r) {
        Tally t;
        for (int k = 0; k <= 8; ++k)
            for (int l = 0; l <= 8; ++l) t.add(orthonormality_check(k, l), std::to_string(k) + "," + std::to_string(l));
        t.finish(r);
    });
    s.check("d_k = Pi_k(dim B) by recursion, k <= 12", "dimension d_k = Pi_k(dim B)", [&](CheckRecord& r) {
        Tally t;
        for (int k = 0; k <= 12; ++k)
            t.add(rep_dimension(dimB, k) == rep_dimension_recursive(dimB, k), "k=" + std::to_string(k));
        if (dimB == 5) {
            const long want[] = {1, 4, 11, 29, 76, 199, 521};
            for (int k = 0; k <= 6; ++k) t.add(rep_dimension(5, k) == want[k], "table k=" + std::to_string(k));
        }
        t.finish(r);
    });
    s.check("sup |Pi_n| on [0,4] = 2n+1, n <= 8", "character polynomials Pi_k", [&](CheckRecord& r) {
        double worst = 0.0;
        for (int n = 0; n <= 8; ++n) worst = std::max(worst, std::abs(character_sup_norm(n) - (2 * n + 1)));
        expect_le(r, "abs_error", worst, 1e-9);
    });
    if (dimB < 5) return;
    s.check("multiplier eigenvalues in (0,1], A(t0) = 1", "multiplier eigenvalues", [&](CheckRecord& r) {
        double lo = 1e300, hi = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double t = kDefaultT0 + (dimB - kDefaultT0) * i / 32.0;
            for (int k = 0; k <= 100; ++k) {
                const double v = multiplier_eigenvalue(t, dimB, k);
                lo = std::min(lo, v), hi = std::max(hi, v);
            }
        }
        expect_ge(r, "min", lo, std::numeric_limits<double>::min());
        expect_le(r, "max", hi, 1.0);
        expect_le(r, "A_t0", empirical_A(kDefaultT0, dimB), 1.0 + 1e-12);
        r.measured["t0"] = kDefaultT0;
    });
    s.check("tail bound closed form vs summed", "multiplier tail bound", [&](CheckRecord& r) {
        double worst = 0.0;
        for (int n : {0, 10, 100, 400, 1000}) {
            const double t = schedule_t(n, dimB);
            const double a = tail_bound(t, dimB, n), b = tail_bound_summed(t, dimB, n);
            worst = std::max(worst, std::abs(a - b) / b);
        }
        expect_le(r, "rel_error", worst, 1e-10);
    });
    s.check("schedule t(n): tail monotone to 0, below 1e-6 at n=400", "multiplier tail bound", [&](CheckRecord& r) {
        double prev = 1e300, worst_rise = 0.0, tprev = 0.0, t_drop = 0.0;
        for (int n = 0; n <= 2000; ++n) {
            const double t = schedule_t(n, dimB), v = tail_bound(t, dimB, n);
            worst_rise = std::max(worst_rise, v - prev);
            t_drop = std::max(t_drop, tprev - t);
            prev = v, tprev = t;
        }
        expect_le(r, "max_increase", worst_rise, 0.0);
        expect_le(r, "t_decrease", t_drop, 0.0);
        expect_le(r, "tail_400", tail_bound(schedule_t(400, dimB), dimB, 400), 1e-6);
        r.measured["tail_1000"] = tail_bound(schedule_t(1000, dimB), dimB, 1000);
        r.measured["tail_2000"] = prev;
        // the eigenvalues themselves decay faster than (t/dim B)^k
        double eig = 0.0;
        const double t400 = schedule_t(400, dimB);
        for (int k = 401; k <= 3000; ++k) eig += (2.0 * k + 1) * multiplier_eigenvalue(t400, dimB, k);
        r.measured["eigenvalue_tail_400"] = eig;
    });
}

}  // namespace

std::vector<CheckRecord> run_suite(const std::string& name, const RunConfig& cfg) {
    Suite s(name, cfg);
    if (name == "qarith") suite_qarith(s);
    else if (name == "diagrams") suite_diagrams(s);
    else if (name == "tl") suite_tl(s);
    else if (name == "jw") suite_jw(s);
    else if (name == "rho") suite_rho(s);
    else if (name == "decomp") suite_decomp(s);
    else if (name == "bounds") suite_bounds(s);
    else if (name == "rd") suite_rd(s);
    else if (name == "spectral") suite_spectral(s);
    else throw ConfigError("unknown suite: " + name);
    return std::move(s.records);
}

VerificationReport run(const RunConfig& cfg) {
    validate(cfg);
    const std::vector<std::string> names = expand_suites(cfg.suites);
    VerificationReport rep;
    rep.algebra = cfg.algebra;
    rep.suites = names;
    rep.K = cfg.K;
    rep.tol = cfg.tol;
    rep.seed = cfg.seed;
    rep.budget = cfg.budget;

    std::vector<std::vector<CheckRecord>> out(names.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < names.size(); i = next++) out[i] = run_suite(names[i], cfg);
    };
    const int nthreads = std::min<int>(cfg.workers, static_cast<int>(names.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& v : out)
        for (auto& r : v) rep.records.push_back(std::move(r));
    return rep;
}

}  // namespace tlcat
