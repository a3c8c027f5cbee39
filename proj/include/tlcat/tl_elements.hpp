#pragma once
/**
 * @file tl_elements.hpp
 * @brief Linear combinations of TL diagrams, exact and numeric, and the
 *        named morphisms of the 2-cabled category built from them.
 *
 * ExactElement stores  scale * sum_D P_D(q) D  with scale a QScale and every
 * P_D an integer Laurent polynomial. No gcds are ever taken on the hot path;
 * equality is decided by subtracting and testing for the zero element, which
 * is exact. NumericElement is the same thing with double coefficients at a
 * fixed q.
 *
 * Products are written x * y with x stacked on top of y (y acts first).
 */

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tlcat/diagrams.hpp"
#include "tlcat/qarith.hpp"

namespace tlcat {

struct SurdMismatch : std::domain_error {
    using std::domain_error::domain_error;
};

/// element serialization record: 1-based partner list and printed coefficient
struct TermRecord {
    std::vector<int> partners;
    std::string coefficient;
};

template <class C>
using TermVec = std::vector<std::pair<TLDiagram, C>>;

// ------------------------------------------------------------------ exact

class ExactElement {
public:
    using Coef = ZLaurent;

    ExactElement() = default;
    ExactElement(int bottom, int top) : k_(bottom), l_(top) {}
    static ExactElement diagram(const TLDiagram& d, long c = 1);
    static ExactElement identity(int n) { return diagram(TLDiagram::identity(n)); }

    int bottom() const { return k_; }
    int top() const { return l_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const QScale& scale() const { return scale_; }
    const TermVec<ZLaurent>& terms() const { return terms_; }

    /// exact coefficient of a diagram, as an element of Q(q) times a surd
    QSurd coefficient(const TLDiagram& d) const;
    /// coefficient at q, evaluated term by term
    double coefficient_at(const TLDiagram& d, double q) const;

    ExactElement scaled(const QScale& s) const;
    ExactElement scaled(long c) const;
    ExactElement scaled(const ZLaurent& p) const;
    ExactElement operator-() const { return scaled(-1L); }

    friend ExactElement operator+(const ExactElement& a, const ExactElement& b);
    friend ExactElement operator-(const ExactElement& a, const ExactElement& b) { return a + (-b); }
    friend ExactElement operator*(const ExactElement& a, const ExactElement& b);
    friend ExactElement tensor(const ExactElement& a, const ExactElement& b);
    friend ExactElement adjoint(const ExactElement& a);
    bool operator==(const ExactElement& o) const;
    bool operator!=(const ExactElement& o) const { return !(*this == o); }

    /// divide common q-integer factors out of the body into the scale
    void reduce();
    std::vector<TermRecord> records() const;
    std::string to_string() const;

private:
    int k_ = 0, l_ = 0;
    QScale scale_;
    TermVec<ZLaurent> terms_;  // sorted by diagram code, no zero coefficients
};

// ---------------------------------------------------------------- numeric

class NumericElement {
public:
    using Coef = double;
    static constexpr double kPrune = 1e-14;

    NumericElement() = default;
    NumericElement(double q, int bottom, int top) : q_(q), k_(bottom), l_(top) {}
    static NumericElement diagram(double q, const TLDiagram& d, double c = 1.0);
    static NumericElement identity(double q, int n) { return diagram(q, TLDiagram::identity(n)); }

    double q() const { return q_; }
    double delta() const { return q_ + 1.0 / q_; }
    int bottom() const { return k_; }
    int top() const { return l_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const TermVec<double>& terms() const { return terms_; }
    double coefficient(const TLDiagram& d) const;
    double max_abs() const;

    NumericElement scaled(const QScale& s) const { return scaled(s.eval(q_)); }
    NumericElement scaled(double c) const;
    NumericElement scaled(long c) const { return scaled(static_cast<double>(c)); }
    NumericElement scaled(const ZLaurent& p) const { return scaled(p.eval(q_)); }
    NumericElement operator-() const { return scaled(-1.0); }

    friend NumericElement operator+(const NumericElement& a, const NumericElement& b);
    friend NumericElement operator-(const NumericElement& a, const NumericElement& b) { return a + (-b); }
    friend NumericElement operator*(const NumericElement& a, const NumericElement& b);
    friend NumericElement tensor(const NumericElement& a, const NumericElement& b);
    friend NumericElement adjoint(const NumericElement& a);
    /// max coefficient difference
    double distance(const NumericElement& o) const;

    std::vector<TermRecord> records() const;

private:
    double q_ = 1.0;
    int k_ = 0, l_ = 0;
    TermVec<double> terms_;
};

/// exact element evaluated at q
NumericElement to_numeric(const ExactElement& x, double q);

/// factories used by the generic calculus
struct ExactAlgebra {
    using Element = ExactElement;
    Element zero(int k, int l) const { return ExactElement(k, l); }
    Element diagram(const TLDiagram& d) const { return ExactElement::diagram(d); }
};

struct NumericAlgebra {
    using Element = NumericElement;
    double q = 1.0;
    Element zero(int k, int l) const { return NumericElement(q, k, l); }
    Element diagram(const TLDiagram& d) const { return NumericElement::diagram(q, d); }
};

enum class Side { L, R };

/// number of strands carried by the cabled object k
constexpr int cabled(int k) { return 2 * k; }

// --------------------------------------------------------- named diagrams

/// TL_{n,n+2}: cup joining top points i,i+1 (0-based), n through strands
TLDiagram cup_diagram(int n, int i);
/// TL_{n+2,n}: the adjoint of cup_diagram(n, i)
TLDiagram cap_diagram(int n, int i);
/// r nested cups, in TL_{0,2r}
TLDiagram nested_cups(int r);
/// TL_y diagram: cup at top points r-1,r, cap at bottom points y-2,y-1, rest through
TLDiagram fk_diagram(int y, int r);
/// TL_n: E_i, cap-cup at positions i,i+1
TLDiagram capcup_diagram(int n, int i);

/// fusion triple (n,k,l) used for phi^{(alpha)}_{k,side}
struct Triple {
    int n, k, l;
};
Triple phi_triple(int alpha, Side side, int k);

/**
 * The 2-cabled TL calculus over a coefficient model. Every morphism of the
 * paper is produced here, identically for exact and numeric coefficients.
 * Caches are filled on first use; an instance is not meant to be shared
 * across threads while filling.
 */
template <class Alg>
class TLCalc {
public:
    using E = typename Alg::Element;

    explicit TLCalc(Alg alg = {}) : alg_(alg) {}
    const Alg& algebra() const { return alg_; }

    E identity(int n) const { return alg_.diagram(TLDiagram::identity(n)); }
    E diagram(const TLDiagram& d) const { return alg_.diagram(d); }
    E pad(int a, const E& x, int b) const {
        E r = x;
        if (a > 0) r = tensor(identity(a), r);
        if (b > 0) r = tensor(r, identity(b));
        return r;
    }

    /// t(k,l) = delta^{-1/2} (k strands, cup, l strands)
    E generator_t(int k, int l) const { return diagram(cup_diagram(k + l, k)).scaled(QScale::qint(2, -1)); }
    E nu() const { return generator_t(0, 0); }
    /// m = delta t(1,1)^* = delta^{1/2} |cap|
    E m() const { return diagram(cap_diagram(2, 1)).scaled(QScale::qint(2, 1)); }
    E m_star() const { return adjoint(m()); }

    /// 1 - sum_r (-1)^{y-r-1} [r]/[y] D_r, so that p_y = bracket * (p_{y-1} x 1)
    const E& fk_bracket(int y) {
        auto it = bracket_.find(y);
        if (it != bracket_.end()) return it->second;
        E a = identity(y);
        for (int r = 1; r <= y - 1; ++r) {
            const long sign = ((y - r - 1) % 2 == 0) ? 1 : -1;
            QScale s = QScale::qint(r, 2) * QScale::qint(y, -2);
            a = a - diagram(fk_diagram(y, r)).scaled(s).scaled(sign);
        }
        return bracket_.emplace(y, std::move(a)).first->second;
    }

    /// Jones-Wenzl projection from the Frenkel-Khovanov recursion
    const E& jw(int y) {
        auto it = jw_.find(y);
        if (it != jw_.end()) return it->second;
        E p = (y <= 1) ? identity(y) : fk_bracket(y) * tensor(jw(y - 1), identity(1));
        return jw_.emplace(y, std::move(p)).first->second;
    }

    /// Jones-Wenzl projection from Wenzl's recursion (independent route)
    const E& jw_wenzl(int y) {
        auto it = wenzl_.find(y);
        if (it != wenzl_.end()) return it->second;
        E p;
        if (y <= 1) {
            p = identity(y);
        } else {
            E prev = tensor(jw_wenzl(y - 1), identity(1));
            E e = diagram(capcup_diagram(y, y - 2));
            QScale c = QScale::qint(y - 1, 2) * QScale::qint(y, -2);
            p = prev - (prev * (e * prev)).scaled(c);
        }
        return wenzl_.emplace(y, std::move(p)).first->second;
    }

    /// (1_a x p_y x 1_b) * x, using the bracket factorization of p_y
    E left_jw(int y, int a, const E& x) {
        if (y <= 1) return x;
        const int b = x.top() - a - y;
        if (b < 0) throw GradingError("left_jw: projection does not fit");
        E r = x;
        for (int j = 2; j <= y; ++j) r = pad(a, fk_bracket(j), y - j + b) * r;
        return r;
    }
    /// x * (1_a x p_y x 1_b)
    E right_jw(const E& x, int y, int a) { return adjoint(left_jw(y, a, adjoint(x))); }

    /// t_r = [r+1]^{-1/2} (p_r x p_r) nested cups
    const E& t(int r) {
        auto it = t_.find(r);
        if (it != t_.end()) return it->second;
        E x = diagram(nested_cups(r));
        x = left_jw(r, r, x);
        x = left_jw(r, 0, x);
        if (r > 0) x = x.scaled(QScale::qint(r + 1, -1));
        return t_.emplace(r, std::move(x)).first->second;
    }

    /// t_2 = [3]^{-1/2} (p_2 x p_2) m^* nu
    E t2_from_m() {
        E x = m_star() * nu();
        return left_jw(2, 0, left_jw(2, 2, x)).scaled(QScale::qint(3, -1));
    }
    /// t_2 = [3]^{-1/2} (1_2 x p_2) m^* nu  (right = false: (p_2 x 1_2) variant)
    E t2_one_sided(bool right) {
        E x = m_star() * nu();
        return left_jw(2, right ? 2 : 0, x).scaled(QScale::qint(3, -1));
    }

    /// t_{2(k+l)} from t_{2k}, t_{2l} by the two-parameter recursion
    E t_even_recursive(int k, int l) {
        const int n = 2 * (k + l);
        E x = pad(2 * k, t(2 * l), 2 * k) * t(2 * k);
        x = left_jw(n, n, left_jw(n, 0, x));
        QScale s = QScale::qint(2 * k + 1, 1) * QScale::qint(2 * l + 1, 1) * QScale::qint(2 * k + 2 * l + 1, -1);
        return x.scaled(s);
    }
    /// t_{2k} from t_{2k-2} and t_2 with a single projection on the given side
    E t_even_one_sided(int k, Side side) {
        E x = pad(2 * k - 2, t(2), 2 * k - 2) * t(2 * k - 2);
        x = left_jw(2 * k, side == Side::L ? 0 : 2 * k, x);
        QScale s = QScale::qint(2 * k - 1, 1) * QScale::qint(3, 1) * QScale::qint(2 * k + 1, -1);
        return x.scaled(s);
    }

    /// rho_l^{n x k} = (p_{2n} x p_{2k})(1 x t_r x 1) p_{2l}
    E rho(int n, int k, int l) {
        const int r = fusion_defect(n, k, l);
        E x = pad(2 * n - r, t(r), 2 * k - r);
        x = right_jw(x, 2 * l, 0);
        x = left_jw(2 * n, 0, x);
        x = left_jw(2 * k, 2 * n, x);
        return x;
    }

    /// C_{(n,k,l)}^{-1/2} rho; k = 0 is allowed for alpha = +1 (vacuum block)
    E phi(int alpha, Side side, int k) {
        const Triple tr = phi_triple(alpha, side, k);
        return rho(tr.n, tr.k, tr.l).scaled(QScale::from_monomial(coupling_monomial(tr.n, tr.k, tr.l), -1));
    }

    /// the closed forms displayed next to the definition of the phi family
    E phi_closed_form(int alpha, Side side, int k) {
        const int K = 2 * k;
        if (alpha == 1) {
            QScale s = QScale::qint(3, 1) * QScale::qint(K + 1, 1) * QScale::qint(K + 3, -1);
            E x = (side == Side::L) ? pad(0, t(2), K) : pad(K, t(2), 0);
            x = right_jw(x, K, 0);
            x = (side == Side::L) ? left_jw(K + 2, 2, left_jw(2, 0, x)) : left_jw(2, K + 2, left_jw(K + 2, 0, x));
            return x.scaled(s);
        }
        if (alpha == 0) {
            QScale s = QScale::qint(K, 1) * QScale::qint(K + 2, -1);
            E x = (side == Side::L) ? pad(0, m_star(), K - 2) : pad(K - 2, m_star(), 0);
            x = right_jw(x, K, 0);
            x = (side == Side::L) ? left_jw(K, 2, left_jw(2, 0, x)) : left_jw(2, K, left_jw(K, 0, x));
            return x.scaled(s);
        }
        E x = identity(K);
        x = right_jw(x, K, 0);
        x = (side == Side::L) ? left_jw(K - 2, 2, left_jw(2, 0, x)) : left_jw(2, K - 2, left_jw(K - 2, 0, x));
        return x;
    }

private:
    Alg alg_;
    std::map<int, E> bracket_, jw_, wenzl_, t_;
};

using ExactCalc = TLCalc<ExactAlgebra>;
using NumericCalc = TLCalc<NumericAlgebra>;

/// rho^* rho as a full product in TL_{2l}
ExactElement rho_gram_full(ExactCalc& calc, int n, int k, int l);
/**
 * Z = [r+1]^{-1} (1 x cap^(r) x 1)(p_{2n} x p_{2k})(1 x cup^(r) x 1), so that
 * rho^* rho = p_{2l} Z p_{2l}; the p_r inside t_r are absorbed by p_{2n}, p_{2k}.
 */
ExactElement rho_gram_core(ExactCalc& calc, int n, int k, int l);
/// coefficient of the identity in Z; p Z p = eps(Z) p because p kills every other diagram
QSurd rho_gram_reduced(ExactCalc& calc, int n, int k, int l);

}  // namespace tlcat
