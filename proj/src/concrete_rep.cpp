#include "tlcat/concrete_rep.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

namespace tlcat {

long budget_from_env(long fallback) {
    const char* s = std::getenv("TLCAT_BUDGET");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v <= 0) throw std::invalid_argument(std::string("bad TLCAT_BUDGET: ") + s);
    return v;
}

// ------------------------------------------------------------ AlgebraSpec

AlgebraSpec AlgebraSpec::from_blocks(std::vector<int> blocks) {
    if (blocks.empty()) throw RepresentationError("empty block list");
    AlgebraSpec s;
    for (int n : blocks) {
        if (n < 1) throw RepresentationError("block sizes must be positive");
        s.dimB += n * n;
    }
    if (s.dimB < 4) throw RepresentationError("dim B = " + std::to_string(s.dimB) + " < 4 is unsupported");
    s.blocks = std::move(blocks);
    s.delta = std::sqrt(static_cast<double>(s.dimB));
    s.q = q_from_dimB(s.dimB).q;
    return s;
}

AlgebraSpec AlgebraSpec::parse(const std::string& text) {
    std::vector<int> blocks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw RepresentationError("bad block list: '" + text + "'");
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size()) throw RepresentationError("bad block list: '" + text + "'");
        blocks.push_back(v);
    }
    return from_blocks(std::move(blocks));
}

std::string AlgebraSpec::to_string() const {
    std::string s;
    for (size_t i = 0; i < blocks.size(); ++i) s += (i ? "," : "") + std::to_string(blocks[i]);
    return s;
}

SparseMap SparseMap::transposed() const {
    SparseMap t;
    t.in_factors = out_factors;
    t.out_factors = in_factors;
    t.entries.reserve(entries.size());
    for (const auto& e : entries) t.entries.push_back({e.in, e.out, e.c});
    return t;
}

// ------------------------------------------------------------ ConcreteRep

ConcreteRep::ConcreteRep(const AlgebraSpec& spec, long budget) : spec_(spec), budget_(budget) {
    const int D = spec_.dimB;
    int off = 0;
    for (int n : spec_.blocks) {
        offset_.push_back(off);
        off += n * n;
    }
    m_.in_factors = 2;
    m_.out_factors = 1;
    nu_.in_factors = 0;
    nu_.out_factors = 1;
    for (size_t i = 0; i < spec_.blocks.size(); ++i) {
        const int n = spec_.blocks[i];
        const double s = std::sqrt(static_cast<double>(D) / n);
        for (int a = 0; a < n; ++a) {
            nu_.entries.push_back({basis_index(static_cast<int>(i), a, a), 0, 1.0 / s});
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    const long in = static_cast<long>(basis_index(static_cast<int>(i), a, b)) * D +
                                    basis_index(static_cast<int>(i), b, c);
                    m_.entries.push_back({basis_index(static_cast<int>(i), a, c), in, s});
                }
        }
    }
    mstar_ = m_.transposed();
    nustar_ = nu_.transposed();
    calc_ = std::make_unique<NumericCalc>(NumericAlgebra{spec_.q});
}

int ConcreteRep::basis_index(int block, int a, int b) const {
    const int n = spec_.blocks[static_cast<size_t>(block)];
    return offset_[static_cast<size_t>(block)] + a * n + b;
}

long ConcreteRep::power(int n) const {
    long p = 1;
    for (int i = 0; i < n; ++i) p *= spec_.dimB;
    return p;
}

void ConcreteRep::check_budget(int k) const {
    long p = 1;
    for (int i = 0; i < k; ++i) {
        p *= spec_.dimB;
        if (p > budget_)
            throw ResourceError("(dim B)^" + std::to_string(k) + " exceeds the budget " + std::to_string(budget_));
    }
}

Eigen::MatrixXd ConcreteRep::dense(const SparseMap& s) const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(power(s.out_factors), power(s.in_factors));
    for (const auto& e : s.entries) M(e.out, e.in) += e.c;
    return M;
}

Batch ConcreteRep::apply_map(const SparseMap& M, int f, int n, const Batch& x) const {
    if (x.cols() != power(n)) throw RepresentationError("apply_map: batch width does not match factor count");
    if (f < 0 || f + M.in_factors > n) throw RepresentationError("apply_map: factor range out of bounds");
    const long Din = power(M.in_factors), Dout = power(M.out_factors);
    const long L = power(f), R = power(n - f - M.in_factors);
    Batch out = Batch::Zero(x.rows(), L * Dout * R);
    for (long l = 0; l < L; ++l)
        for (const auto& e : M.entries)
            out.middleCols((l * Dout + e.out) * R, R) += e.c * x.middleCols((l * Din + e.in) * R, R);
    return out;
}

const ConcreteRep::Plan& ConcreteRep::plan(const TLDiagram& d) const {
    const auto code = d.code();
    auto it = plans_.find(code);
    if (it != plans_.end()) return it->second;
    if (d.bottom() % 2 || d.top() % 2)
        throw RepresentationError("odd grading (" + std::to_string(d.bottom()) + "," + std::to_string(d.top()) +
                                  ") has no concrete image");
    Plan p;
    p.in_factors = d.bottom() / 2;
    const double rd = std::sqrt(spec_.delta);
    p.scale = 1.0;
    // bottom caps, innermost first
    std::vector<int> cur;
    for (int i = 0; i < d.bottom(); ++i) cur.push_back(i);
    auto peel = [&](std::vector<int>& v, auto isInner, std::vector<int>& positions) {
        size_t i = 0;
        while (i + 1 < v.size()) {
            if (isInner(v[i]) && d.partner(v[i]) == v[i + 1]) {
                positions.push_back(static_cast<int>(i));
                v.erase(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i) + 2);
                i = i > 0 ? i - 1 : 0;
            } else {
                ++i;
            }
        }
    };
    std::vector<int> capPos;
    peel(cur, [&](int pt) { return d.partner(pt) < d.bottom(); }, capPos);
    for (int i : capPos) {
        if (i % 2 == 0) {
            p.ops.push_back({0, i / 2});
            p.scale *= rd;
        } else {
            p.ops.push_back({1, (i - 1) / 2});
            p.scale /= rd;
        }
    }
    std::vector<int> top;
    for (int j = 0; j < d.top(); ++j) top.push_back(d.bottom() + j);
    std::vector<int> cupPos;
    peel(top, [&](int pt) { return d.partner(pt) >= d.bottom(); }, cupPos);
    for (auto r = cupPos.rbegin(); r != cupPos.rend(); ++r) {
        const int i = *r;
        if (i % 2 == 0) {
            p.ops.push_back({2, i / 2});
            p.scale *= rd;
        } else {
            p.ops.push_back({3, (i - 1) / 2});
            p.scale /= rd;
        }
    }
    return plans_.emplace(code, std::move(p)).first->second;
}

Batch ConcreteRep::apply_diagram(const TLDiagram& d, const Batch& x, double c) const {
    const Plan& p = plan(d);
    int n = p.in_factors;
    Batch y = x;
    for (const auto& op : p.ops) {
        switch (op.kind) {
            case 0: y = apply_map(nustar_, op.factor, n, y); --n; break;
            case 1: y = apply_map(m_, op.factor, n, y); --n; break;
            case 2: y = apply_map(nu_, op.factor, n, y); ++n; break;
            default: y = apply_map(mstar_, op.factor, n, y); ++n; break;
        }
    }
    y *= c * p.scale;
    return y;
}

Batch ConcreteRep::apply(const NumericElement& e, const Batch& x) const {
    if (e.bottom() % 2 || e.top() % 2) throw RepresentationError("odd grading has no concrete image");
    if (x.cols() != power(e.bottom() / 2)) throw RepresentationError("apply: batch width does not match grading");
    Batch out = Batch::Zero(x.rows(), power(e.top() / 2));
    for (const auto& [d, c] : e.terms()) out += apply_diagram(d, x, c);
    return out;
}

int ConcreteRep::factors(long w) const {
    int n = 0;
    while (w > 1) {
        if (w % spec_.dimB) throw RepresentationError("batch width is not a power of dim B");
        w /= spec_.dimB;
        ++n;
    }
    return n;
}

Batch ConcreteRep::apply_jw(int y, int a, const Batch& x) const {
    if (y <= 1) return x;
    const int b = 2 * factors(x.cols()) - a - y;
    if (b < 0 || a < 0) throw GradingError("apply_jw: projection does not fit");
    Batch r = x;
    for (int j = 2; j <= y; ++j) r = apply(calc_->pad(a, calc_->fk_bracket(j), y - j + b), r);
    return r;
}

namespace {
// identity(2 off) x [identity(2n - r) x cups(r) x identity(2k - r)] x identity(2 after)
TLDiagram padded_cups(int off, int n, int k, int r, int after) {
    TLDiagram d = tensor_diagrams(TLDiagram::identity(2 * off + 2 * n - r), nested_cups(r));
    return tensor_diagrams(d, TLDiagram::identity(2 * k - r + 2 * after));
}
}  // namespace

Batch ConcreteRep::apply_rho(int n, int k, int l, const Batch& x, int offset) const {
    const int r = fusion_defect(n, k, l);
    const int after = factors(x.cols()) - offset - l;
    if (after < 0 || offset < 0) throw GradingError("apply_rho: block does not fit");
    Batch y = apply_jw(2 * l, 2 * offset, x);
    y = apply_diagram(padded_cups(offset, n, k, r, after), y, 1.0 / std::sqrt(qint(r + 1, spec_.q)));
    y = apply_jw(2 * n, 2 * offset, y);
    return apply_jw(2 * k, 2 * offset + 2 * n, y);
}

Batch ConcreteRep::apply_phi(int alpha, Side side, int k, const Batch& x, int offset) const {
    const Triple t = phi_triple(alpha, side, k);
    return apply_rho(t.n, t.k, t.l, x, offset) / std::sqrt(coupling_constant_numeric(t.n, t.k, t.l, spec_.q));
}

Batch ConcreteRep::apply_phi_adjoint(int alpha, Side side, int k, const Batch& x, int offset) const {
    const Triple t = phi_triple(alpha, side, k);
    const int r = fusion_defect(t.n, t.k, t.l);
    const int after = factors(x.cols()) - offset - t.n - t.k;
    if (after < 0 || offset < 0) throw GradingError("apply_phi_adjoint: block does not fit");
    Batch y = apply_jw(2 * t.n, 2 * offset, x);
    y = apply_jw(2 * t.k, 2 * offset + 2 * t.n, y);
    y = apply_diagram(adjoint_diagram(padded_cups(offset, t.n, t.k, r, after)), y,
                      1.0 / std::sqrt(qint(r + 1, spec_.q) * coupling_constant_numeric(t.n, t.k, t.l, spec_.q)));
    return apply_jw(2 * t.l, 2 * offset, y);
}

Batch ConcreteRep::shift(const Batch& x, int n, bool last_to_front) const {
    const long N = power(n), top = power(n - 1), D = spec_.dimB;
    if (x.cols() != N) throw RepresentationError("shift: batch width does not match factor count");
    Batch out(x.rows(), N);
    for (long i = 0; i < N; ++i) {
        const long o = last_to_front ? (i % D) * top + i / D : (i % top) * D + i / top;
        out.col(o) = x.col(i);
    }
    return out;
}

Batch ConcreteRep::swap_blocks(const Batch& x, int n1, int n2) const {
    const long A = power(n1), B = power(n2);
    if (x.cols() != A * B) throw RepresentationError("swap_blocks: batch width mismatch");
    Batch out(x.rows(), A * B);
    for (long a = 0; a < A; ++a)
        for (long b = 0; b < B; ++b) out.col(b * A + a) = x.col(a * B + b);
    return out;
}

Eigen::MatrixXd ConcreteRep::represent(const NumericElement& e) const {
    const long n = power(e.bottom() / 2);
    return apply(e, Batch::Identity(n, n)).transpose();
}

Eigen::MatrixXd ConcreteRep::represent_jw(int k) const {
    check_budget(k);
    const long n = power(k);
    return apply_jw(2 * k, 0, Batch::Identity(n, n)).transpose();
}

const Eigen::MatrixXd& ConcreteRep::irrep_basis(int k) const {
    auto it = basis_.find(k);
    if (it != basis_.end()) return it->second;
    Eigen::MatrixXd V;
    if (k == 0) {
        V = Eigen::MatrixXd::Ones(1, 1);
    } else {
        Eigen::MatrixXd P = represent_jw(k);
        P = 0.5 * (P + P.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
        std::vector<long> keep;
        for (long i = 0; i < P.rows(); ++i)
            if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
        V.resize(P.rows(), static_cast<long>(keep.size()));
        for (size_t j = 0; j < keep.size(); ++j) V.col(static_cast<long>(j)) = es.eigenvectors().col(keep[j]);
    }
    return basis_.emplace(k, std::move(V)).first->second;
}

int ConcreteRep::irrep_dimension(int k) const {
    if (k == 0) return 1;
    Eigen::MatrixXd P = represent_jw(k);
    P = 0.5 * (P + P.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
    int r = 0;
    for (long i = 0; i < P.rows(); ++i)
        if (std::abs(es.eigenvalues()(i)) > 1e-8) ++r;
    return r;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (long i = 0; i < A.rows(); ++i)
        for (long j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

int ConcreteRep::irrep_dimension_compressed(int k) const {
    if (k < 2) return irrep_dimension(k);
    check_budget(k);
    // p_{2k} = A_{2k} (A_{2k-1} x 1) (p_{2k-2} x p_2), so P V = A V on V = H_{k-1} x H_1
    const Eigen::MatrixXd V = kron(irrep_basis(k - 1), irrep_basis(1));
    Batch y = apply(calc_->pad(0, calc_->fk_bracket(2 * k - 1), 1), Batch(V.transpose()));
    y = apply(calc_->fk_bracket(2 * k), y);
    Eigen::MatrixXd M = y * V;
    M = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    int r = 0;
    for (long i = 0; i < M.rows(); ++i)
        if (std::abs(es.eigenvalues()(i)) > 1e-8) ++r;
    return r;
}

Eigen::VectorXd ConcreteRep::t_vector(int r) const {
    if (r % 2) throw RepresentationError("t_r with odd r has no concrete image");
    Batch y = apply_diagram(nested_cups(r), Batch::Ones(1, 1), 1.0 / std::sqrt(qint(r + 1, spec_.q)));
    y = apply_jw(r, 0, y);
    return apply_jw(r, r, y).row(0).transpose();
}

Eigen::MatrixXd ConcreteRep::F1() const {
    const Eigen::MatrixXd& E = irrep_basis(1);
    const Eigen::VectorXd t = t_vector(2);
    const int D = spec_.dimB;
    Eigen::MatrixXd T(D, D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) T(a, b) = t(a * D + b);
    return std::sqrt(qint(3, spec_.q)) * E.transpose() * T * E;
}

// --------------------------------------------------------------- norms

double operator_norm(const Eigen::MatrixXd& a, double tol, unsigned seed) {
    if (a.size() == 0) return 0.0;
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Eigen::VectorXd v(a.cols());
        for (long i = 0; i < v.size(); ++i) v(i) = g(rng);
        v.normalize();
        double lambda = 0.0;
        bool collapsed = false;
        for (int it = 0; it < 20000; ++it) {
            Eigen::VectorXd w = a.transpose() * (a * v);
            const double nw = w.norm();
            if (nw == 0.0) {
                collapsed = true;
                break;
            }
            const double prev = lambda;
            lambda = nw;
            v = w / nw;
            if (it > 2 && std::abs(lambda - prev) <= tol * lambda) break;
        }
        if (!collapsed) return std::sqrt(lambda);
        if (a.norm() == 0.0) return 0.0;
    }
    return std::sqrt((a.transpose() * a).eval().selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff());
}

double hs_norm(const Eigen::MatrixXd& a) { return a.norm(); }

int numeric_rank(const Eigen::MatrixXd& a, double tol) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
    int r = 0;
    for (long i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return r;
}

StructureCheck check_structure_maps(const ConcreteRep& rep) {
    const long D = rep.dimB();
    const Eigen::MatrixXd M = rep.dense(rep.m_map());
    const Eigen::MatrixXd N = rep.dense(rep.nu_map());
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(D, D);
    StructureCheck c;
    c.mmstar = (M * M.transpose() - rep.delta() * rep.delta() * I).cwiseAbs().maxCoeff();
    c.nu_norm = std::abs((N.transpose() * N)(0, 0) - 1.0);
    c.assoc = (M * kron(M, I) - M * kron(I, M)).cwiseAbs().maxCoeff();
    c.unit = std::max((M * kron(I, N) - I).cwiseAbs().maxCoeff(), (M * kron(N, I) - I).cwiseAbs().maxCoeff());
    c.frobenius = (M.transpose() * M - kron(M, I) * kron(I, M.transpose())).cwiseAbs().maxCoeff();
    return c;
}

}  // namespace tlcat
