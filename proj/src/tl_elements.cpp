#include "tlcat/tl_elements.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tlcat {

namespace {

template <class C>
void sort_terms(TermVec<C>& t) {
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first.code() < b.first.code(); });
}

template <class C>
const C* find_term(const TermVec<C>& t, const TLDiagram& d) {
    const auto code = d.code();
    auto it = std::lower_bound(t.begin(), t.end(), code,
                               [](const auto& x, std::uint64_t c) { return x.first.code() < c; });
    if (it == t.end() || it->first.code() != code) return nullptr;
    return &it->second;
}

void check_same_grading(int k1, int l1, int k2, int l2, const char* what) {
    if (k1 != k2 || l1 != l2)
        throw GradingError(std::string(what) + ": gradings (" + std::to_string(k1) + "," + std::to_string(l1) +
                           ") and (" + std::to_string(k2) + "," + std::to_string(l2) + ") differ");
}

const ZLaurent& qint_poly(int a) {
    thread_local std::map<int, ZLaurent> cache;
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, ZLaurent::qint(a)).first;
    return it->second;
}

// multiplier turning body at scale s into body at scale c (c <= s componentwise)
ZLaurent lift(const QScale& s, const QScale& c) {
    ZLaurent m(1);
    for (const auto& [a, h] : s.half) {
        auto it = c.half.find(a);
        const int hc = it == c.half.end() ? 0 : it->second;
        for (int i = 0; i < (h - hc) / 2; ++i) m = m * qint_poly(a);
    }
    for (const auto& [a, hc] : c.half) {
        if (s.half.count(a)) continue;
        for (int i = 0; i < -hc / 2; ++i) m = m * qint_poly(a);
    }
    return m;
}

QScale common_scale(const QScale& a, const QScale& b) {
    QScale c;
    auto get = [](const QScale& s, int key) {
        auto it = s.half.find(key);
        return it == s.half.end() ? 0 : it->second;
    };
    std::vector<int> keys;
    for (const auto& kv : a.half) keys.push_back(kv.first);
    for (const auto& kv : b.half) keys.push_back(kv.first);
    for (int key : keys) {
        const int ha = get(a, key), hb = get(b, key);
        if ((ha - hb) % 2 != 0)
            throw SurdMismatch("adding elements with different surd factors: " + a.to_string() + " vs " +
                               b.to_string());
        const int m = std::min(ha, hb);
        if (m != 0) c.half[key] = m;
    }
    return c;
}

}  // namespace

// ------------------------------------------------------------------ exact

ExactElement ExactElement::diagram(const TLDiagram& d, long c) {
    ExactElement e(d.bottom(), d.top());
    if (c != 0) e.terms_.emplace_back(d, ZLaurent(c));
    return e;
}

QSurd ExactElement::coefficient(const TLDiagram& d) const {
    const ZLaurent* p = find_term(terms_, d);
    if (!p) return QSurd(0L);
    return QSurd(QRationalFunction(p->to_qlaurent())) * scale_.to_surd();
}

double ExactElement::coefficient_at(const TLDiagram& d, double q) const {
    const ZLaurent* p = find_term(terms_, d);
    return p ? p->eval(q) * scale_.eval(q) : 0.0;
}

ExactElement ExactElement::scaled(const QScale& s) const {
    ExactElement r = *this;
    if (r.is_zero()) return r;
    r.scale_ = r.scale_ * s;
    return r;
}

ExactElement ExactElement::scaled(long c) const {
    ExactElement r(k_, l_);
    if (c == 0) return r;
    r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

ExactElement ExactElement::scaled(const ZLaurent& p) const {
    ExactElement r(k_, l_);
    if (p.is_zero()) return r;
    r.scale_ = scale_;
    r.terms_.reserve(terms_.size());
    for (const auto& [d, c] : terms_) r.terms_.emplace_back(d, c * p);
    return r;
}

ExactElement operator+(const ExactElement& a, const ExactElement& b) {
    check_same_grading(a.k_, a.l_, b.k_, b.l_, "add");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    ExactElement r(a.k_, a.l_);
    r.scale_ = common_scale(a.scale_, b.scale_);
    const ZLaurent ma = lift(a.scale_, r.scale_);
    const ZLaurent mb = lift(b.scale_, r.scale_);
    const bool ua = ma == ZLaurent(1), ub = mb == ZLaurent(1);
    size_t i = 0, j = 0;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    while (i < a.terms_.size() || j < b.terms_.size()) {
        const bool takeA = j == b.terms_.size() ||
                           (i < a.terms_.size() && a.terms_[i].first.code() <= b.terms_[j].first.code());
        const bool takeB = i == a.terms_.size() ||
                           (j < b.terms_.size() && b.terms_[j].first.code() <= a.terms_[i].first.code());
        ZLaurent c;
        TLDiagram d;
        if (takeA) {
            d = a.terms_[i].first;
            c = ua ? a.terms_[i].second : a.terms_[i].second * ma;
            ++i;
        }
        if (takeB) {
            d = b.terms_[j].first;
            if (ub) c += b.terms_[j].second;
            else c.add_product(b.terms_[j].second, mb);
            ++j;
        }
        if (!c.is_zero()) r.terms_.emplace_back(d, std::move(c));
    }
    if (r.terms_.empty()) r.scale_ = QScale{};
    return r;
}

ExactElement operator*(const ExactElement& a, const ExactElement& b) {
    if (a.k_ != b.l_)
        throw GradingError("compose: upper has " + std::to_string(a.k_) + " bottom points, lower has " +
                           std::to_string(b.l_) + " top points");
    ExactElement r(b.k_, a.l_);
    if (a.is_zero() || b.is_zero()) return r;
    r.scale_ = a.scale_ * b.scale_;
    std::unordered_map<std::uint64_t, size_t> index;
    index.reserve(a.terms_.size() * 4 + 16);
    std::vector<std::pair<TLDiagram, ZLaurent>> acc;
    const ZLaurent& two = qint_poly(2);
    std::vector<ZLaurent> powers(1, ZLaurent(1));  // [2]^j
    for (const auto& [da, ca] : a.terms_) {
        std::vector<ZLaurent> withLoops;  // ca * [2]^j, filled lazily
        for (const auto& [db, cb] : b.terms_) {
            const Composition comp = compose_diagrams(da, db);
            while (static_cast<int>(powers.size()) <= comp.loops) powers.push_back(powers.back() * two);
            while (static_cast<int>(withLoops.size()) <= comp.loops)
                withLoops.push_back(ca * powers[withLoops.size()]);
            const auto code = comp.result.code();
            auto [it, fresh] = index.emplace(code, acc.size());
            if (fresh) acc.emplace_back(comp.result, ZLaurent());
            acc[it->second].second.add_product(withLoops[static_cast<size_t>(comp.loops)], cb);
        }
    }
    for (auto& t : acc)
        if (!t.second.is_zero()) r.terms_.push_back(std::move(t));
    sort_terms(r.terms_);
    if (r.terms_.empty()) r.scale_ = QScale{};
    r.reduce();
    return r;
}

ExactElement tensor(const ExactElement& a, const ExactElement& b) {
    ExactElement r(a.k_ + b.k_, a.l_ + b.l_);
    if (a.is_zero() || b.is_zero()) return r;
    r.scale_ = a.scale_ * b.scale_;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [da, ca] : a.terms_)
        for (const auto& [db, cb] : b.terms_) r.terms_.emplace_back(tensor_diagrams(da, db), ca * cb);
    sort_terms(r.terms_);
    return r;
}

ExactElement adjoint(const ExactElement& a) {
    // coefficients are real Laurent polynomials in real q, so * only flips diagrams
    ExactElement r(a.l_, a.k_);
    r.scale_ = a.scale_;
    r.terms_.reserve(a.terms_.size());
    for (const auto& [d, c] : a.terms_) r.terms_.emplace_back(adjoint_diagram(d), c);
    sort_terms(r.terms_);
    return r;
}

bool ExactElement::operator==(const ExactElement& o) const {
    if (k_ != o.k_ || l_ != o.l_) return false;
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (scale_.surd_class() != o.scale_.surd_class()) return false;
    return (*this - o).is_zero();
}

void ExactElement::reduce() {
    if (terms_.empty()) {
        scale_ = QScale{};
        return;
    }
    std::vector<int> keys;
    for (const auto& [a, h] : scale_.half)
        if (h <= -2) keys.push_back(a);
    for (int a : keys) {
        const ZLaurent& qa = qint_poly(a);
        while (scale_.half.count(a) && scale_.half.at(a) <= -2) {
            std::vector<ZLaurent> quo(terms_.size());
            bool ok = true;
            for (size_t i = 0; i < terms_.size() && ok; ++i) ok = ZLaurent::divide_exact(terms_[i].second, qa, quo[i]);
            if (!ok) break;
            for (size_t i = 0; i < terms_.size(); ++i) terms_[i].second = std::move(quo[i]);
            scale_.mul(a, 2);
        }
    }
}

std::vector<TermRecord> ExactElement::records() const {
    std::vector<TermRecord> out;
    for (const auto& [d, c] : terms_) out.push_back({d.partner_list(), coefficient(d).to_string()});
    return out;
}

std::string ExactElement::to_string() const {
    std::ostringstream os;
    os << "TL(" << k_ << "," << l_ << ")";
    if (terms_.empty()) return os.str() + " 0";
    if (!scale_.is_one()) os << " " << scale_.to_string() << " *";
    for (const auto& [d, c] : terms_) {
        os << "\n  (" << c.to_string() << ") [";
        auto pl = d.partner_list();
        for (size_t i = 0; i < pl.size(); ++i) os << (i ? " " : "") << pl[i];
        os << "]";
    }
    return os.str();
}

NumericElement to_numeric(const ExactElement& x, double q) {
    NumericElement r(q, x.bottom(), x.top());
    const double s = x.scale().eval(q);
    for (const auto& [d, c] : x.terms()) r = r + NumericElement::diagram(q, d, c.eval(q) * s);
    return r;
}

// ---------------------------------------------------------------- numeric

NumericElement NumericElement::diagram(double q, const TLDiagram& d, double c) {
    NumericElement e(q, d.bottom(), d.top());
    if (c != 0.0) e.terms_.emplace_back(d, c);
    return e;
}

double NumericElement::coefficient(const TLDiagram& d) const {
    const double* p = find_term(terms_, d);
    return p ? *p : 0.0;
}

double NumericElement::max_abs() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.second));
    return m;
}

NumericElement NumericElement::scaled(double c) const {
    NumericElement r(q_, k_, l_);
    if (c == 0.0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

NumericElement operator+(const NumericElement& a, const NumericElement& b) {
    check_same_grading(a.k_, a.l_, b.k_, b.l_, "add");
    if (a.q_ != b.q_) throw std::invalid_argument("adding numeric elements at different q");
    NumericElement r(a.q_, a.k_, a.l_);
    size_t i = 0, j = 0;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first.code() < b.terms_[j].first.code())) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || b.terms_[j].first.code() < a.terms_[i].first.code()) {
            r.terms_.push_back(b.terms_[j++]);
        } else {
            const double c = a.terms_[i].second + b.terms_[j].second;
            if (std::abs(c) > NumericElement::kPrune) r.terms_.emplace_back(a.terms_[i].first, c);
            ++i;
            ++j;
        }
    }
    return r;
}

NumericElement operator*(const NumericElement& a, const NumericElement& b) {
    if (a.k_ != b.l_)
        throw GradingError("compose: upper has " + std::to_string(a.k_) + " bottom points, lower has " +
                           std::to_string(b.l_) + " top points");
    NumericElement r(a.q_, b.k_, a.l_);
    const double delta = a.delta();
    std::vector<double> powers(1, 1.0);
    std::unordered_map<std::uint64_t, size_t> index;
    index.reserve(a.terms_.size() * 4 + 16);
    TermVec<double> acc;
    for (const auto& [da, ca] : a.terms_) {
        for (const auto& [db, cb] : b.terms_) {
            const Composition comp = compose_diagrams(da, db);
            while (static_cast<int>(powers.size()) <= comp.loops) powers.push_back(powers.back() * delta);
            auto [it, fresh] = index.emplace(comp.result.code(), acc.size());
            if (fresh) acc.emplace_back(comp.result, 0.0);
            acc[it->second].second += ca * cb * powers[static_cast<size_t>(comp.loops)];
        }
    }
    for (auto& t : acc)
        if (std::abs(t.second) > NumericElement::kPrune) r.terms_.push_back(t);
    sort_terms(r.terms_);
    return r;
}

NumericElement tensor(const NumericElement& a, const NumericElement& b) {
    NumericElement r(a.q_, a.k_ + b.k_, a.l_ + b.l_);
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [da, ca] : a.terms_)
        for (const auto& [db, cb] : b.terms_) r.terms_.emplace_back(tensor_diagrams(da, db), ca * cb);
    sort_terms(r.terms_);
    return r;
}

NumericElement adjoint(const NumericElement& a) {
    NumericElement r(a.q_, a.l_, a.k_);
    r.terms_.reserve(a.terms_.size());
    for (const auto& [d, c] : a.terms_) r.terms_.emplace_back(adjoint_diagram(d), c);
    sort_terms(r.terms_);
    return r;
}

double NumericElement::distance(const NumericElement& o) const {
    check_same_grading(k_, l_, o.k_, o.l_, "distance");
    return (*this - o).max_abs();
}

std::vector<TermRecord> NumericElement::records() const {
    std::vector<TermRecord> out;
    for (const auto& [d, c] : terms_) {
        std::ostringstream os;
        os.precision(17);
        os << c;
        out.push_back({d.partner_list(), os.str()});
    }
    return out;
}

// --------------------------------------------------------- named diagrams

TLDiagram cup_diagram(int n, int i) {
    if (i < 0 || i > n) throw GradingError("cup position out of range");
    const int k = n, l = n + 2;
    std::vector<int> p(static_cast<size_t>(k + l));
    for (int b = 0; b < n; ++b) {
        const int t = k + (b < i ? b : b + 2);
        p[static_cast<size_t>(b)] = t;
        p[static_cast<size_t>(t)] = b;
    }
    p[static_cast<size_t>(k + i)] = k + i + 1;
    p[static_cast<size_t>(k + i + 1)] = k + i;
    return TLDiagram(k, l, p);
}

TLDiagram cap_diagram(int n, int i) { return adjoint_diagram(cup_diagram(n, i)); }

TLDiagram nested_cups(int r) {
    std::vector<int> p(static_cast<size_t>(2 * r));
    for (int i = 0; i < 2 * r; ++i) p[static_cast<size_t>(i)] = 2 * r - 1 - i;
    return TLDiagram(0, 2 * r, p);
}

TLDiagram fk_diagram(int y, int r) {
    if (y < 2 || r < 1 || r > y - 1) throw GradingError("fk_diagram index out of range");
    std::vector<int> p(static_cast<size_t>(2 * y));
    p[static_cast<size_t>(y - 2)] = y - 1;
    p[static_cast<size_t>(y - 1)] = y - 2;
    const int c0 = y + r - 1;
    p[static_cast<size_t>(c0)] = c0 + 1;
    p[static_cast<size_t>(c0 + 1)] = c0;
    int top = 0;
    for (int b = 0; b < y - 2; ++b) {
        if (top == r - 1) top += 2;
        p[static_cast<size_t>(b)] = y + top;
        p[static_cast<size_t>(y + top)] = b;
        ++top;
    }
    return TLDiagram(y, y, p);
}

TLDiagram capcup_diagram(int n, int i) {
    return compose_diagrams(cup_diagram(n - 2, i), cap_diagram(n - 2, i)).result;
}

Triple phi_triple(int alpha, Side side, int k) {
    const bool L = side == Side::L;
    switch (alpha) {
        case 1:
            if (k < 0) break;
            return L ? Triple{1, k + 1, k} : Triple{k + 1, 1, k};
        case 0:
            if (k < 1) break;
            return L ? Triple{1, k, k} : Triple{k, 1, k};
        case -1:
            if (k < 1) break;
            return L ? Triple{1, k - 1, k} : Triple{k - 1, 1, k};
        default:
            break;
    }
    throw FusionError("no phi^(" + std::to_string(alpha) + ") at k=" + std::to_string(k));
}

// ------------------------------------------------------------ rho^* rho

ExactElement rho_gram_full(ExactCalc& calc, int n, int k, int l) {
    const ExactElement r = calc.rho(n, k, l);
    return adjoint(r) * r;
}

ExactElement rho_gram_core(ExactCalc& calc, int n, int k, int l) {
    const int r = fusion_defect(n, k, l);
    const ExactElement cups = calc.pad(2 * n - r, calc.diagram(nested_cups(r)), 2 * k - r);
    const ExactElement mid = tensor(calc.jw(2 * n), calc.jw(2 * k));
    return (adjoint(cups) * (mid * cups)).scaled(QScale::qint(r + 1, -2));
}

QSurd rho_gram_reduced(ExactCalc& calc, int n, int k, int l) {
    return rho_gram_core(calc, n, k, l).coefficient(TLDiagram::identity(2 * l));
}

}  // namespace tlcat
