#include "tlcat/qarith.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tlcat {

// ---------------------------------------------------------------- QLaurent

QLaurent::QLaurent(long c) {
    if (c != 0) c_.emplace_back(c);
}

QLaurent::QLaurent(const mpq_class& c) {
    if (c != 0) c_.push_back(c);
}

QLaurent QLaurent::monomial(const mpq_class& c, int exponent) {
    QLaurent p(c);
    if (!p.is_zero()) p.lo_ = exponent;
    return p;
}

void QLaurent::trim() {
    size_t first = 0;
    while (first < c_.size() && c_[first] == 0) ++first;
    if (first == c_.size()) {
        c_.clear();
        lo_ = 0;
        return;
    }
    size_t last = c_.size();
    while (c_[last - 1] == 0) --last;
    if (first > 0 || last < c_.size()) {
        c_.erase(c_.begin() + static_cast<long>(last), c_.end());
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
        lo_ += static_cast<int>(first);
    }
}

mpq_class QLaurent::coeff(int e) const {
    if (is_zero() || e < lo_ || e > high()) return 0;
    return c_[static_cast<size_t>(e - lo_)];
}

QLaurent QLaurent::operator-() const {
    QLaurent r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int lo = std::min(lo_, o.lo_);
    int hi = std::max(high(), o.high());
    if (lo < lo_) c_.insert(c_.begin(), static_cast<size_t>(lo_ - lo), mpq_class(0));
    lo_ = lo;
    c_.resize(static_cast<size_t>(hi - lo + 1), mpq_class(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[static_cast<size_t>(o.lo_ - lo_) + i] += o.c_[i];
    trim();
    return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) { return *this += -o; }

QLaurent& QLaurent::operator*=(const mpq_class& s) {
    if (s == 0) {
        c_.clear();
        lo_ = 0;
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    QLaurent r;
    if (a.is_zero() || b.is_zero()) return r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

QLaurent QLaurent::shifted(int k) const {
    QLaurent r = *this;
    if (!r.is_zero()) r.lo_ += k;
    return r;
}

QLaurent QLaurent::inverted_variable() const {
    QLaurent r;
    if (is_zero()) return r;
    r.c_.assign(c_.rbegin(), c_.rend());
    r.lo_ = -high();
    return r;
}

bool QLaurent::is_palindromic() const { return *this == inverted_variable(); }

double QLaurent::eval(double q) const { return static_cast<double>(eval_ld(q)); }

long double QLaurent::eval_ld(long double q) const {
    if (is_zero()) return 0.0L;
    long double acc = 0.0L;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + static_cast<long double>(it->get_d());
    return acc * std::pow(q, static_cast<long double>(lo_));
}


std::string QLaurent::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
        const mpq_class& c = c_[static_cast<size_t>(i)];
        if (c == 0) continue;
        int e = lo_ + i;
        mpq_class a = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        bool unit = (a == 1);
        if (!unit || e == 0) os << a.get_str();
        if (e != 0) {
            if (!unit) os << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

void QLaurent::divmod(const QLaurent& a, const QLaurent& b, QLaurent& quo, QLaurent& rem) {
    // ordinary polynomial division, exponents taken relative to 0
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.lo_ < 0 || b.lo_ < 0) throw std::domain_error("divmod expects ordinary polynomials");
    std::vector<mpq_class> r(static_cast<size_t>(a.is_zero() ? 0 : a.high() + 1), mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[static_cast<size_t>(a.lo_) + i] = a.c_[i];
    std::vector<mpq_class> d(static_cast<size_t>(b.high() + 1), mpq_class(0));
    for (size_t i = 0; i < b.c_.size(); ++i) d[static_cast<size_t>(b.lo_) + i] = b.c_[i];
    const int db = static_cast<int>(d.size()) - 1;
    const mpq_class lead_inv = 1 / d.back();
    std::vector<mpq_class> qv;
    int dr = static_cast<int>(r.size()) - 1;
    if (dr >= db) qv.assign(static_cast<size_t>(dr - db + 1), mpq_class(0));
    for (int i = dr; i >= db; --i) {
        if (r[static_cast<size_t>(i)] == 0) continue;
        mpq_class f = r[static_cast<size_t>(i)] * lead_inv;
        qv[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= f * d[static_cast<size_t>(j)];
    }
    quo = QLaurent();
    quo.c_ = std::move(qv);
    quo.trim();
    rem = QLaurent();
    rem.c_ = std::move(r);
    rem.trim();
}

QLaurent QLaurent::poly_gcd(QLaurent a, QLaurent b) {
    // q is a unit in the Laurent ring, so strip powers of q first
    if (!a.is_zero()) a.lo_ = 0;
    if (!b.is_zero()) b.lo_ = 0;
    while (!b.is_zero()) {
        QLaurent qt, r;
        divmod(a, b, qt, r);
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) {
            b.lo_ = 0;
            b *= mpq_class(1) / b.leading();
        }
    }
    if (!a.is_zero()) a *= mpq_class(1) / a.leading();
    return a;
}

// ------------------------------------------------------- QRationalFunction

QRationalFunction::QRationalFunction(QLaurent num, QLaurent den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

void QRationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = QLaurent(1);
        return;
    }
    int s = den_.low();
    if (s != 0) {
        num_ = num_.shifted(-s);
        den_ = den_.shifted(-s);
    }
    if (den_.degree_span() > 0) {
        QLaurent g = QLaurent::poly_gcd(num_, den_);
        if (g.degree_span() > 0) {
            const int nlo = num_.low();
            QLaurent qn, rn, qd, rd;
            QLaurent::divmod(num_.shifted(-nlo), g, qn, rn);
            QLaurent::divmod(den_, g, qd, rd);
            num_ = qn.shifted(nlo);
            den_ = qd;
        }
    }
    mpq_class lc = den_.leading();
    if (lc != 1) {
        mpq_class inv = 1 / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

bool QRationalFunction::is_one() const { return den_.degree_span() == 0 && num_ == QLaurent(1); }

QRationalFunction QRationalFunction::operator-() const {
    QRationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

QRationalFunction& QRationalFunction::operator+=(const QRationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        if (den_.degree_span() > 0) normalize();
        else if (num_.is_zero()) den_ = QLaurent(1);
        return *this;
    }
    QLaurent g = QLaurent::poly_gcd(den_, o.den_);
    QLaurent a, b, r;
    QLaurent::divmod(den_, g, a, r);    // den = g a
    QLaurent::divmod(o.den_, g, b, r);  // o.den = g b
    num_ = num_ * b + o.num_ * a;
    den_ = den_ * b;
    normalize();
    return *this;
}

QRationalFunction& QRationalFunction::operator-=(const QRationalFunction& o) { return *this += -o; }

QRationalFunction& QRationalFunction::operator*=(const QRationalFunction& o) {
    if (is_zero() || o.is_zero()) {
        num_ = QLaurent();
        den_ = QLaurent(1);
        return *this;
    }
    if (den_.degree_span() == 0 && o.den_.degree_span() == 0) {
        num_ = num_ * o.num_;
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

QRationalFunction QRationalFunction::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    QRationalFunction r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize();
    return r;
}

QRationalFunction& QRationalFunction::operator/=(const QRationalFunction& o) { return *this *= o.inverse(); }

QRationalFunction QRationalFunction::pow(int e) const {
    QRationalFunction base = e >= 0 ? *this : inverse();
    unsigned n = static_cast<unsigned>(e >= 0 ? e : -e);
    QRationalFunction acc(1);
    while (n) {
        if (n & 1U) acc *= base;
        n >>= 1U;
        if (n) base *= base;
    }
    return acc;
}

QRationalFunction QRationalFunction::inverted_variable() const {
    return QRationalFunction(num_.inverted_variable(), den_.inverted_variable());
}

double QRationalFunction::eval(double q) const {
    return static_cast<double>(num_.eval_ld(q) / den_.eval_ld(q));
}


std::string QRationalFunction::to_string() const {
    if (den_.degree_span() == 0) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ------------------------------------------------------------ QIntMonomial

QIntMonomial& QIntMonomial::mul_qint(int a, int e) {
    if (a == 0) throw std::domain_error("[0]_q is zero and cannot enter a monomial");
    if (a == 1 || e == 0) return *this;
    int& slot = exps[a];
    slot += e;
    if (slot == 0) exps.erase(a);
    return *this;
}

QIntMonomial& QIntMonomial::mul_factorial(int a, int e) {
    for (int j = 2; j <= a; ++j) mul_qint(j, e);
    return *this;
}

QIntMonomial QIntMonomial::operator*(const QIntMonomial& o) const {
    QIntMonomial r = *this;
    for (auto [a, e] : o.exps) r.mul_qint(a, e);
    return r;
}

QIntMonomial QIntMonomial::inverse() const {
    QIntMonomial r;
    for (auto [a, e] : exps) r.exps[a] = -e;
    return r;
}

QRationalFunction QIntMonomial::to_rational() const {
    QRationalFunction r(1L);
    for (auto [a, e] : exps) {
        const QRationalFunction qa = q_integer(a);
        for (int i = 0; i < std::abs(e); ++i) r = (e > 0) ? r * qa : r / qa;
    }
    return r;
}

double QIntMonomial::eval(double q) const {
    std::vector<double> up, down;
    for (auto [a, e] : exps) {
        double v = qint(a, q);
        for (int i = 0; i < std::abs(e); ++i) (e > 0 ? up : down).push_back(v);
    }
    double acc = 1.0;
    size_t i = 0, j = 0;
    while (i < up.size() || j < down.size()) {
        if (j < down.size() && (acc >= 1.0 || i == up.size())) acc /= down[j++];
        else acc *= up[i++];
    }
    return acc;
}

std::string QIntMonomial::to_string() const {
    if (exps.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto [a, e] : exps) {
        if (!first) os << "*";
        first = false;
        os << "[" << a << "]";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

// -------------------------------------------------------------------- QSurd

QSurd QSurd::sqrt_of(const QIntMonomial& m) {
    QSurd s(1);
    s.radicand = m;
    s.normalize();
    return s;
}

void QSurd::normalize() {
    if (rat.is_zero()) {
        radicand.exps.clear();
        return;
    }
    QIntMonomial pulled;
    std::map<int, int> rest;
    for (auto [a, e] : radicand.exps) {
        int h = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
        if (h != 0) pulled.mul_qint(a, h);
        if (e - 2 * h != 0) rest[a] = 1;
    }
    radicand.exps = std::move(rest);
    if (!pulled.is_one()) rat *= pulled.to_rational();
}

QSurd QSurd::operator*(const QSurd& o) const {
    QSurd r;
    r.rat = rat * o.rat;
    r.radicand = radicand * o.radicand;
    r.normalize();
    return r;
}

QSurd QSurd::operator/(const QSurd& o) const {
    QSurd r;
    r.rat = rat / o.rat;
    r.radicand = radicand * o.radicand.inverse();
    r.normalize();
    return r;
}

bool QSurd::operator==(const QSurd& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    return rat == o.rat && radicand == o.radicand;
}

double QSurd::eval(double q) const { return rat.eval(q) * std::sqrt(radicand.eval(q)); }

std::string QSurd::to_string() const {
    if (radicand.is_one()) return rat.to_string();
    return "(" + rat.to_string() + ")*sqrt(" + radicand.to_string() + ")";
}

// ------------------------------------------------------------ free functions

DeltaParameter q_from_delta(double delta) {
    if (!(delta >= 2.0)) throw std::domain_error("delta must be >= 2");
    DeltaParameter d;
    d.delta = delta;
    // 2 / (delta + sqrt(delta^2 - 4)) avoids cancellation for large delta
    d.q = 2.0 / (delta + std::sqrt(delta * delta - 4.0));
    if (d.q > 1.0) d.q = 1.0;
    return d;
}

DeltaParameter q_from_dimB(int dimB) {
    if (dimB < 4) throw std::domain_error("dim B must be at least 4");
    DeltaParameter d = q_from_delta(std::sqrt(static_cast<double>(dimB)));
    d.dimB = dimB;
    return d;
}

QRationalFunction q_integer(int a) {
    if (a < 0) throw std::domain_error("q_integer: negative index");
    if (a == 0) return QRationalFunction(0);
    QLaurent p;
    for (int i = 0; i < a; ++i) p += QLaurent::monomial(1, a - 1 - 2 * i);
    return QRationalFunction(p);
}

QRationalFunction q_factorial(int a) {
    if (a < 0) throw std::domain_error("q_factorial: negative index");
    QLaurent acc(1);
    for (int j = 2; j <= a; ++j) acc = acc * q_integer(j).numerator();
    return QRationalFunction(acc);
}

QRationalFunction quantum_dimension(int k) { return q_integer(2 * k + 1); }

bool admissible(int n, int k, int l) {
    if (n < 0 || k < 0 || l < 0) return false;
    int r = n + k - l;
    return r >= 0 && r <= 2 * std::min(n, k);
}

int fusion_defect(int n, int k, int l) {
    if (!admissible(n, k, l))
        throw FusionError("U^" + std::to_string(l) + " does not occur in U^" + std::to_string(n) + " x U^" +
                          std::to_string(k));
    return n + k - l;
}

QIntMonomial coupling_monomial(int n, int k, int l) {
    const int r = fusion_defect(n, k, l);
    QIntMonomial m;
    m.mul_factorial(2 * n + 2 * k - r + 1).mul_factorial(2 * n - r).mul_factorial(r).mul_factorial(2 * k - r);
    m.mul_qint(r + 1, -1).mul_qint(2 * l + 1, -1);
    m.mul_factorial(2 * n, -1).mul_factorial(2 * k, -1).mul_factorial(2 * l, -1);
    return m;
}

QRationalFunction coupling_constant(int n, int k, int l) { return coupling_monomial(n, k, l).to_rational(); }

double coupling_constant_numeric(int n, int k, int l, double q) { return coupling_monomial(n, k, l).eval(q); }

double qint(int a, double q) {
    if (a < 0) throw std::domain_error("qint: negative index");
    if (a == 0) return 0.0;
    if (q == 1.0) return a;
    double acc = 0.0, t = std::pow(q, -(a - 1));
    const double q2 = q * q;
    for (int i = 0; i < a; ++i) {
        acc += t;
        t *= q2;
    }
    return acc;
}

double empirical_D0(double q, int nmax) {
    double d0 = 1.0;
    for (int n = 0; n <= nmax; ++n)
        for (int k = 0; k <= nmax; ++k)
            for (int r = 0; r <= 2 * std::min(n, k); ++r) d0 = std::min(d0, coupling_constant_numeric(n, k, n + k - r, q));
    return d0;
}

double ao_alpha(int l, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("ao_alpha needs 0 < q < 1");
    if (l < 0) throw std::domain_error("ao_alpha: negative index");
    double s = 0.0;
    const double ml = qint(2 * l + 1, q);
    for (int n = 0; n <= l; ++n) s += qint(2 * n + 1, q) * qint(2 * (l - n) + 1, q) / ml;
    return 1.0 / std::sqrt(s);
}

}  // namespace tlcat
