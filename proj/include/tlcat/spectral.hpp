#pragma once
/**
 * @file spectral.hpp
 * @brief Chebyshev polynomials S_k, the family Pi_k(x) = S_{2k}(sqrt x),
 *        free Poisson moments and the multiplier eigenvalue sequences.
 */

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tlcat {

/// polynomial with exact rational coefficients, c[i] is the x^i coefficient
struct IntPolynomial {
    std::vector<mpq_class> c;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpq_class> coeffs);
    static IntPolynomial x_power(int k);

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    mpq_class coeff(int i) const;
    mpq_class leading() const { return c.empty() ? mpq_class(0) : c.back(); }

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    bool operator==(const IntPolynomial& o) const { return c == o.c; }

    mpq_class eval(const mpq_class& x) const;
    double eval(double x) const;
    std::string to_string() const;

private:
    void trim();
};

IntPolynomial chebyshev_S(int k);
IntPolynomial pi_poly(int k);
/// Pi_k read off S_{2k}; throws if S_{2k} has an odd-degree term
IntPolynomial pi_from_chebyshev(int k);

/// j-th moment of the free Poisson law, the Catalan number (2j)!/(j!(j+1)!)
mpz_class free_poisson_moment(int j);
/// the same moment by adaptive quadrature of the density on [0,4]
double free_poisson_moment_quadrature(int j, double tol = 1e-13);
/// the moments 0..2n with the Catalan/quadrature agreement checked to rel_tol
std::vector<mpz_class> moment_table(int n, double rel_tol = 1e-9);
/// int Pi_k Pi_l dmu, exactly
mpq_class pi_pairing(int k, int l);
bool orthonormality_check(int k, int l);

/// d_k = Pi_k(dim B)
mpz_class rep_dimension(int dimB, int k);
/// d_k by d_{k+1} = (d_1 - 1) d_k - d_{k-1}
mpz_class rep_dimension_recursive(int dimB, int k);

/// sup of |Pi_n| on [0,4] by a grid and Brent refinement
double character_sup_norm(int n);

constexpr double kDefaultT0 = 4.5;
/// Pi_k(t)/Pi_k(dim B) for t0 <= t < dim B
double multiplier_eigenvalue(double t, int dimB, int k, double t0 = kDefaultT0);
/// sum_{k > n} (2k+1)(t/dim B)^k in closed form
double tail_bound(double t, int dimB, int n);
/// the same sum added up term by term until the terms drop below 1e-300
double tail_bound_summed(double t, int dimB, int n);
/// dim B (1 - (n+1)^{-1/2}) clipped to [t0, dim B)
double schedule_t(int n, int dimB, double t0 = kDefaultT0);
/// sup over t0 <= t < dim B (a grid) and k <= kmax of the eigenvalue over (t/dim B)^k
double empirical_A(double t0, int dimB, int kmax = 200, int tgrid = 64);

}  // namespace tlcat
