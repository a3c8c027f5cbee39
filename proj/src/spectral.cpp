#include "tlcat/spectral.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tlcat {

// ---------------------------------------------------------- IntPolynomial

IntPolynomial::IntPolynomial(std::vector<mpq_class> coeffs) : c(std::move(coeffs)) { trim(); }

IntPolynomial IntPolynomial::x_power(int k) {
    IntPolynomial p;
    p.c.assign(static_cast<size_t>(k) + 1, mpq_class(0));
    p.c.back() = 1;
    return p;
}

void IntPolynomial::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

mpq_class IntPolynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c.size())) return 0;
    return c[static_cast<size_t>(i)];
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    IntPolynomial r;
    r.c.assign(std::max(c.size(), o.c.size()), mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    IntPolynomial r;
    r.c.assign(std::max(c.size(), o.c.size()), mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    r.trim();
    return r;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    IntPolynomial r;
    if (c.empty() || o.c.empty()) return r;
    r.c.assign(c.size() + o.c.size() - 1, mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
}

mpq_class IntPolynomial::eval(const mpq_class& x) const {
    mpq_class v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

double IntPolynomial::eval(double x) const {
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + it->get_d();
    return v;
}

std::string IntPolynomial::to_string() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpq_class& a = c[static_cast<size_t>(i)];
        if (a == 0) continue;
        mpq_class mag = abs(a);
        if (!first) os << (a < 0 ? " - " : " + ");
        else if (a < 0) os << "-";
        first = false;
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

// ------------------------------------------------------------- families

IntPolynomial chebyshev_S(int k) {
    if (k < 0) throw std::domain_error("chebyshev_S: negative index");
    IntPolynomial prev({1}), cur = IntPolynomial::x_power(1);
    if (k == 0) return prev;
    const IntPolynomial x = IntPolynomial::x_power(1);
    for (int i = 1; i < k; ++i) {
        IntPolynomial next = x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

IntPolynomial pi_poly(int k) {
    if (k < 0) throw std::domain_error("pi_poly: negative index");
    IntPolynomial prev({1}), cur({-1, 1});
    if (k == 0) return prev;
    const IntPolynomial pi1 = cur;
    for (int i = 1; i < k; ++i) {
        // Pi_1 Pi_i = Pi_{i+1} + Pi_i + Pi_{i-1}
        IntPolynomial next = pi1 * cur - cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

IntPolynomial pi_from_chebyshev(int k) {
    IntPolynomial s = chebyshev_S(2 * k);
    std::vector<mpq_class> out(static_cast<size_t>(k) + 1, mpq_class(0));
    for (int i = 0; i <= s.degree(); ++i) {
        if (i % 2 == 1) {
            if (s.coeff(i) != 0) throw std::logic_error("S_{2k} has an odd-degree term");
            continue;
        }
        out[static_cast<size_t>(i / 2)] = s.coeff(i);
    }
    return IntPolynomial(std::move(out));
}

// --------------------------------------------------------------- moments

mpz_class free_poisson_moment(int j) {
    if (j < 0) throw std::domain_error("free_poisson_moment: negative order");
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), 2UL * static_cast<unsigned long>(j), static_cast<unsigned long>(j));
    return b / (j + 1);
}

double free_poisson_moment_quadrature(int j, double tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto density = [j](double x) {
        if (x <= 0.0 || x >= 4.0) return 0.0;
        return std::pow(x, j - 1) * std::sqrt(x * (4.0 - x)) / (2.0 * std::numbers::pi);
    };
    return integrator.integrate(density, 0.0, 4.0, tol);
}

std::vector<mpz_class> moment_table(int n, double rel_tol) {
    std::vector<mpz_class> mu;
    for (int j = 0; j <= 2 * n; ++j) {
        mpz_class exact = free_poisson_moment(j);
        double quad = free_poisson_moment_quadrature(j);
        double e = exact.get_d();
        if (std::abs(quad - e) > rel_tol * e)
            throw std::runtime_error("moment table: quadrature disagrees at j=" + std::to_string(j));
        mu.push_back(exact);
    }
    return mu;
}

mpq_class pi_pairing(int k, int l) {
    IntPolynomial p = pi_poly(k) * pi_poly(l);
    mpq_class s = 0;
    for (int i = 0; i <= p.degree(); ++i) s += p.coeff(i) * mpq_class(free_poisson_moment(i));
    return s;
}

bool orthonormality_check(int k, int l) { return pi_pairing(k, l) == (k == l ? 1 : 0); }

// ---------------------------------------------------------- dimensions

mpz_class rep_dimension(int dimB, int k) {
    mpq_class v = pi_poly(k).eval(mpq_class(dimB));
    return v.get_num();
}

mpz_class rep_dimension_recursive(int dimB, int k) {
    mpz_class prev = 1, cur = dimB - 1;
    if (k == 0) return prev;
    for (int i = 1; i < k; ++i) {
        mpz_class next = (dimB - 2) * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// Pi_n(x) by the three-term recursion, which is stable on [0,4]
double pi_value(int n, double x) {
    double prev = 1.0, cur = x - 1.0;
    if (n == 0) return prev;
    for (int i = 1; i < n; ++i) {
        double next = (x - 2.0) * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

double character_sup_norm(int n) {
    constexpr int kGrid = 4000;
    double best = 0.0;
    int arg = 0;
    for (int i = 0; i <= kGrid; ++i) {
        double v = std::abs(pi_value(n, 4.0 * i / kGrid));
        if (v > best) best = v, arg = i;
    }
    double lo = 4.0 * std::max(arg - 1, 0) / kGrid, hi = 4.0 * std::min(arg + 1, kGrid) / kGrid;
    auto neg = [n](double x) { return -std::abs(pi_value(n, x)); };
    auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 50);
    return std::max(best, -r.second);
}

// ---------------------------------------------------------- multipliers

double multiplier_eigenvalue(double t, int dimB, int k, double t0) {
    if (!(t0 > 4.0 && t0 < 5.0)) throw std::domain_error("t0 must lie in (4,5)");
    if (dimB < 5) throw std::domain_error("multiplier_eigenvalue: dim B must be at least 5");
    if (t < t0 || t >= dimB) throw std::domain_error("multiplier_eigenvalue: t outside [t0, dim B)");
    // both values are positive for x > 4; compare in the log domain
    double a = 0, b = 0, pa = 1, ca = t - 1, pb = 1, cb = dimB - 1.0;
    if (k == 0) return 1.0;
    for (int i = 1; i < k; ++i) {
        double na = (t - 2) * ca - pa, nb = (dimB - 2) * cb - pb;
        pa = ca, ca = na, pb = cb, cb = nb;
        if (ca > 1e200) a += std::log(1e200), ca /= 1e200, pa /= 1e200;
        if (cb > 1e200) b += std::log(1e200), cb /= 1e200, pb /= 1e200;
    }
    return std::exp(a - b + std::log(ca) - std::log(cb));
}

double tail_bound(double t, int dimB, int n) {
    const double r = t / dimB;
    if (!(r >= 0 && r < 1)) throw std::domain_error("tail_bound: need 0 <= t < dim B");
    const double m = n + 1.0;
    return std::pow(r, m) * ((2 * m + 1) * (1 - r) + 2 * r) / ((1 - r) * (1 - r));
}

double tail_bound_summed(double t, int dimB, int n) {
    const double r = t / dimB;
    double s = 0, term = 0;
    long k = n + 1;
    double rk = std::pow(r, static_cast<double>(k));
    do {
        term = (2.0 * k + 1) * rk;
        s += term;
        rk *= r;
        ++k;
    } while (term > 1e-300 && (term > 1e-18 * s || k < 2L * n + 10));
    return s;
}

double schedule_t(int n, int dimB, double t0) {
    double t = dimB * (1.0 - 1.0 / std::sqrt(n + 1.0));
    t = std::max(t, t0);
    return std::min(t, std::nextafter(static_cast<double>(dimB), 0.0));
}

double empirical_A(double t0, int dimB, int kmax, int tgrid) {
    double A = 0.0;
    for (int i = 0; i < tgrid; ++i) {
        double t = t0 + (dimB - t0) * i / tgrid;
        for (int k = 0; k <= kmax; ++k)
            A = std::max(A, multiplier_eigenvalue(t, dimB, k, t0) / std::pow(t / dimB, k));
    }
    return A;
}

}  // namespace tlcat
