#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tlcat/qarith.hpp"

namespace tlcat {

namespace {

inline long ck_add(long a, long b) {
    long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("ZLaurent coefficient overflow");
    return r;
}

inline long ck_mul(long a, long b) {
    long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("ZLaurent coefficient overflow");
    return r;
}

}  // namespace

ZLaurent::ZLaurent(long c) {
    if (c != 0) c_.push_back(c);
}

ZLaurent ZLaurent::monomial(long c, int exponent) {
    ZLaurent p(c);
    if (c != 0) p.lo_ = exponent;
    return p;
}

ZLaurent ZLaurent::qint(int a) {
    ZLaurent p;
    if (a <= 0) {
        if (a == 0) return p;
        throw std::domain_error("q-integer of a negative index");
    }
    p.lo_ = -(a - 1);
    p.c_.assign(static_cast<size_t>(2 * a - 1), 0);
    for (int i = 0; i < a; ++i) p.c_[static_cast<size_t>(2 * i)] = 1;
    return p;
}

void ZLaurent::trim() {
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

long ZLaurent::coeff(int e) const {
    if (is_zero() || e < lo_ || e > high()) return 0;
    return c_[static_cast<size_t>(e - lo_)];
}

ZLaurent ZLaurent::operator-() const {
    ZLaurent r = *this;
    for (auto& x : r.c_) x = ck_mul(x, -1);
    return r;
}

ZLaurent& ZLaurent::operator+=(const ZLaurent& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int lo = std::min(lo_, o.lo_);
    const int hi = std::max(high(), o.high());
    if (lo < lo_) c_.insert(c_.begin(), static_cast<size_t>(lo_ - lo), 0);
    lo_ = lo;
    c_.resize(static_cast<size_t>(hi - lo + 1), 0);
    const size_t off = static_cast<size_t>(o.lo_ - lo_);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[off + i] = ck_add(c_[off + i], o.c_[i]);
    trim();
    return *this;
}

ZLaurent& ZLaurent::operator-=(const ZLaurent& o) { return *this += -o; }

ZLaurent& ZLaurent::operator*=(long s) {
    if (s == 0) {
        c_.clear();
        lo_ = 0;
        return *this;
    }
    for (auto& x : c_) x = ck_mul(x, s);
    return *this;
}

ZLaurent operator*(const ZLaurent& a, const ZLaurent& b) {
    ZLaurent r;
    r.add_product(a, b);
    return r;
}

void ZLaurent::add_product(const ZLaurent& a, const ZLaurent& b) {
    if (a.is_zero() || b.is_zero()) return;
    const int plo = a.lo_ + b.lo_;
    const int phi = a.high() + b.high();
    if (is_zero()) {
        lo_ = plo;
        c_.assign(static_cast<size_t>(phi - plo + 1), 0);
    } else {
        const int lo = std::min(lo_, plo);
        const int hi = std::max(high(), phi);
        if (lo < lo_) c_.insert(c_.begin(), static_cast<size_t>(lo_ - lo), 0);
        lo_ = lo;
        c_.resize(static_cast<size_t>(hi - lo + 1), 0);
    }
    long* out = c_.data() + (plo - lo_);
    const size_t na = a.c_.size(), nb = b.c_.size();
    for (size_t i = 0; i < na; ++i) {
        const long x = a.c_[i];
        if (x == 0) continue;
        long* o = out + i;
        for (size_t j = 0; j < nb; ++j) o[j] = ck_add(o[j], ck_mul(x, b.c_[j]));
    }
    trim();
}

ZLaurent ZLaurent::pow(int e) const {
    if (e < 0) throw std::domain_error("ZLaurent::pow with negative exponent");
    ZLaurent r(1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool ZLaurent::divide_exact(const ZLaurent& a, const ZLaurent& b, ZLaurent& quo) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    quo = ZLaurent();
    if (a.is_zero()) return true;
    const long lead = b.c_.back();
    const int bspan = static_cast<int>(b.c_.size()) - 1;
    ZLaurent rem = a;
    std::vector<std::pair<int, long>> qterms;
    while (!rem.is_zero() && static_cast<int>(rem.c_.size()) - 1 >= bspan) {
        const long top = rem.c_.back();
        if (top % lead != 0) return false;
        const long t = top / lead;
        const int shift = rem.high() - b.high();
        qterms.emplace_back(shift, t);
        // rem -= t * q^shift * b, done in place
        const size_t off = static_cast<size_t>(shift + b.lo_ - rem.lo_);
        for (size_t j = 0; j < b.c_.size(); ++j) rem.c_[off + j] = ck_add(rem.c_[off + j], ck_mul(-t, b.c_[j]));
        rem.trim();
    }
    if (!rem.is_zero()) return false;
    for (const auto& [e, c] : qterms) quo += monomial(c, e);
    return true;
}

QLaurent ZLaurent::to_qlaurent() const {
    QLaurent r;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) r += QLaurent::monomial(mpq_class(c_[i]), lo_ + static_cast<int>(i));
    return r;
}

double ZLaurent::eval(double q) const {
    if (is_zero()) return 0.0;
    long double acc = 0.0L;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + static_cast<long double>(*it);
    return static_cast<double>(acc * std::pow(static_cast<long double>(q), static_cast<long double>(lo_)));
}

std::string ZLaurent::to_string() const { return to_qlaurent().to_string(); }

// ------------------------------------------------------------------ QScale

QScale QScale::qint(int a, int twice_exponent) {
    QScale s;
    s.mul(a, twice_exponent);
    return s;
}

QScale QScale::from_monomial(const QIntMonomial& m, int twice_exponent) {
    QScale s;
    for (const auto& [a, e] : m.exps) s.mul(a, e * twice_exponent);
    return s;
}

QScale& QScale::mul(int a, int twice_exponent) {
    if (a == 0) throw std::domain_error("QScale: [0]_q is zero");
    if (a == 1 || twice_exponent == 0) return *this;
    int& h = half[a];
    h += twice_exponent;
    if (h == 0) half.erase(a);
    return *this;
}

QScale QScale::operator*(const QScale& o) const {
    QScale r = *this;
    for (const auto& [a, h] : o.half) r.mul(a, h);
    return r;
}

QScale QScale::inverse() const {
    QScale r;
    for (const auto& [a, h] : half) r.half[a] = -h;
    return r;
}

std::vector<int> QScale::surd_class() const {
    std::vector<int> out;
    for (const auto& [a, h] : half)
        if (h % 2 != 0) out.push_back(a);
    return out;
}

double QScale::eval(double q) const {
    double lg = 0.0;
    for (const auto& [a, h] : half) lg += 0.5 * h * std::log(tlcat::qint(a, q));
    return std::exp(lg);
}

QSurd QScale::to_surd() const {
    QIntMonomial whole, rad;
    for (const auto& [a, h] : half) {
        const int fl = (h >= 0) ? h / 2 : -((-h + 1) / 2);  // floor(h/2)
        if (fl != 0) whole.mul_qint(a, fl);
        if (h - 2 * fl != 0) rad.mul_qint(a, 1);
    }
    QSurd s(whole.to_rational());
    return s * QSurd::sqrt_of(rad);
}

std::string QScale::to_string() const {
    if (half.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, h] : half) {
        if (!first) os << "*";
        first = false;
        os << "[" << a << "]";
        if (h != 2) {
            if (h % 2 == 0) os << "^" << h / 2;
            else os << "^(" << h << "/2)";
        }
    }
    return os.str();
}

}  // namespace tlcat
