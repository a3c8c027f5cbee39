#pragma once
/**
 * @file qarith.hpp
 * @brief Exact arithmetic in Q(q) and numeric evaluation of q-numbers.
 *
 * QLaurent is a Laurent polynomial in q with GMP rational coefficients.
 * QRationalFunction is a reduced fraction of two of them with a canonical
 * normal form (denominator is an ordinary polynomial with nonzero constant
 * term and leading coefficient 1, coprime to the numerator), so equality is
 * structural.
 */

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlcat {

struct FusionError : std::domain_error {
    using std::domain_error::domain_error;
};

class QLaurent {
public:
    QLaurent() = default;
    QLaurent(long c);  // NOLINT(google-explicit-constructor)
    explicit QLaurent(const mpq_class& c);
    static QLaurent monomial(const mpq_class& c, int exponent);

    bool is_zero() const { return c_.empty(); }
    int low() const { return lo_; }
    int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    int degree_span() const { return is_zero() ? -1 : static_cast<int>(c_.size()) - 1; }
    mpq_class coeff(int exponent) const;
    const std::vector<mpq_class>& coeffs() const { return c_; }
    const mpq_class& leading() const { return c_.back(); }

    QLaurent operator-() const;
    QLaurent& operator+=(const QLaurent& o);
    QLaurent& operator-=(const QLaurent& o);
    QLaurent& operator*=(const mpq_class& s);
    friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
    friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
    friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
    friend QLaurent operator*(QLaurent a, const mpq_class& s) { return a *= s; }
    bool operator==(const QLaurent& o) const { return lo_ == o.lo_ && c_ == o.c_; }
    bool operator!=(const QLaurent& o) const { return !(*this == o); }

    /// multiply by q^k
    QLaurent shifted(int k) const;
    /// q -> 1/q
    QLaurent inverted_variable() const;
    bool is_palindromic() const;

    double eval(double q) const;
    long double eval_ld(long double q) const;
    std::string to_string() const;

    // Ordinary-polynomial helpers (require low() >= 0 semantics handled by caller).
    static void divmod(const QLaurent& a, const QLaurent& b, QLaurent& quo, QLaurent& rem);
    static QLaurent poly_gcd(QLaurent a, QLaurent b);

private:
    friend class QRationalFunction;
    void trim();
    int lo_ = 0;
    std::vector<mpq_class> c_;
};

class QRationalFunction {
public:
    QRationalFunction() : den_(1) {}
    QRationalFunction(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    explicit QRationalFunction(const mpq_class& c) : num_(c), den_(1) { normalize(); }
    explicit QRationalFunction(QLaurent num) : num_(std::move(num)), den_(1) {}
    QRationalFunction(QLaurent num, QLaurent den);

    static QRationalFunction q() { return QRationalFunction(QLaurent::monomial(1, 1)); }

    const QLaurent& numerator() const { return num_; }
    const QLaurent& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_laurent() const { return den_.degree_span() == 0; }

    QRationalFunction operator-() const;
    QRationalFunction& operator+=(const QRationalFunction& o);
    QRationalFunction& operator-=(const QRationalFunction& o);
    QRationalFunction& operator*=(const QRationalFunction& o);
    QRationalFunction& operator/=(const QRationalFunction& o);
    friend QRationalFunction operator+(QRationalFunction a, const QRationalFunction& b) { return a += b; }
    friend QRationalFunction operator-(QRationalFunction a, const QRationalFunction& b) { return a -= b; }
    friend QRationalFunction operator*(QRationalFunction a, const QRationalFunction& b) { return a *= b; }
    friend QRationalFunction operator/(QRationalFunction a, const QRationalFunction& b) { return a /= b; }
    bool operator==(const QRationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QRationalFunction& o) const { return !(*this == o); }

    QRationalFunction inverse() const;
    QRationalFunction pow(int e) const;
    QRationalFunction inverted_variable() const;

    double eval(double q) const;
    std::string to_string() const;

private:
    void normalize();
    QLaurent num_;
    QLaurent den_;  // low() == 0, constant term != 0, monic
};

/// Product of q-integers with integer exponents: prod_a [a]_q^{e_a}.
struct QIntMonomial {
    std::map<int, int> exps;  // a >= 2 only; [1] = 1 is dropped

    QIntMonomial& mul_qint(int a, int e = 1);
    QIntMonomial& mul_factorial(int a, int e = 1);
    QIntMonomial operator*(const QIntMonomial& o) const;
    QIntMonomial inverse() const;
    bool is_one() const { return exps.empty(); }
    bool operator==(const QIntMonomial& o) const { return exps == o.exps; }

    QRationalFunction to_rational() const;
    /// running product of interleaved factors; stays finite for large indices
    double eval(double q) const;
    std::string to_string() const;
};

/**
 * rat * sqrt(prod_a [a]_q^{e_a}) with every e_a in {1}: square parts are
 * moved into rat, so the representation is canonical. q-integers share no
 * square factor (each [a] carries the cyclotomic factor Phi_{2a} that no
 * smaller one has), which makes this normal form unique.
 */
struct QSurd {
    QRationalFunction rat;
    QIntMonomial radicand;

    QSurd() : rat(0) {}
    QSurd(QRationalFunction r) : rat(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    QSurd(long c) : rat(c) {}                          // NOLINT(google-explicit-constructor)
    static QSurd sqrt_of(const QIntMonomial& m);

    QSurd operator*(const QSurd& o) const;
    QSurd operator/(const QSurd& o) const;
    QSurd operator-() const { QSurd s = *this; s.rat = -s.rat; return s; }
    bool operator==(const QSurd& o) const;
    bool is_zero() const { return rat.is_zero(); }
    double eval(double q) const;
    std::string to_string() const;

private:
    void normalize();
};

struct DeltaParameter {
    double delta = 2.0;
    double q = 1.0;
    std::optional<int> dimB;
};

/**
 * Laurent polynomial with int64 coefficients. Every arithmetic step is
 * overflow-checked and throws std::overflow_error rather than wrapping.
 * This is the hot coefficient type of exact TL elements.
 */
class ZLaurent {
public:
    ZLaurent() = default;
    ZLaurent(long c);  // NOLINT(google-explicit-constructor)
    static ZLaurent monomial(long c, int exponent);
    /// [a]_q in division-free form
    static ZLaurent qint(int a);

    bool is_zero() const { return c_.empty(); }
    int low() const { return lo_; }
    int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    long coeff(int exponent) const;
    const std::vector<long>& coeffs() const { return c_; }

    ZLaurent operator-() const;
    ZLaurent& operator+=(const ZLaurent& o);
    ZLaurent& operator-=(const ZLaurent& o);
    ZLaurent& operator*=(long s);
    friend ZLaurent operator+(ZLaurent a, const ZLaurent& b) { return a += b; }
    friend ZLaurent operator-(ZLaurent a, const ZLaurent& b) { return a -= b; }
    friend ZLaurent operator*(const ZLaurent& a, const ZLaurent& b);
    bool operator==(const ZLaurent& o) const { return lo_ == o.lo_ && c_ == o.c_; }
    bool operator!=(const ZLaurent& o) const { return !(*this == o); }

    /// *this += a*b without a temporary
    void add_product(const ZLaurent& a, const ZLaurent& b);
    ZLaurent pow(int e) const;
    /// exact division; returns false (and leaves quo unspecified) if b does not divide a
    static bool divide_exact(const ZLaurent& a, const ZLaurent& b, ZLaurent& quo);

    QLaurent to_qlaurent() const;
    double eval(double q) const;
    std::string to_string() const;

private:
    void trim();
    int lo_ = 0;
    std::vector<long> c_;
};

/**
 * prod_a [a]_q^{h_a/2}: a monomial in q-integers with half-integer
 * exponents, stored as twice the exponent. Prefactors such as delta^{-1/2}
 * and C_{(n,k,l)}^{-1/2} are of this form.
 */
struct QScale {
    std::map<int, int> half;  // a >= 2 -> twice the exponent, never 0

    static QScale qint(int a, int twice_exponent = 2);
    static QScale from_monomial(const QIntMonomial& m, int twice_exponent = 2);
    QScale& mul(int a, int twice_exponent);
    QScale operator*(const QScale& o) const;
    QScale operator/(const QScale& o) const { return *this * o.inverse(); }
    QScale inverse() const;
    bool is_one() const { return half.empty(); }
    bool operator==(const QScale& o) const { return half == o.half; }
    /// q-integers carrying an odd half-exponent
    std::vector<int> surd_class() const;
    double eval(double q) const;
    QSurd to_surd() const;
    std::string to_string() const;
};

DeltaParameter q_from_delta(double delta);
DeltaParameter q_from_dimB(int dimB);

QRationalFunction q_integer(int a);
QRationalFunction q_factorial(int a);
QRationalFunction quantum_dimension(int k);
/// r = n + k - l if the triple is admissible, else throws FusionError
int fusion_defect(int n, int k, int l);
bool admissible(int n, int k, int l);
QIntMonomial coupling_monomial(int n, int k, int l);
QRationalFunction coupling_constant(int n, int k, int l);
double coupling_constant_numeric(int n, int k, int l, double q);

double qint(int a, double q);
/// min of C_{(n,k,l)} over admissible triples with n, k <= nmax
double empirical_D0(double q, int nmax = 6);
double ao_alpha(int l, double q);

}  // namespace tlcat
