#include "tlcat/commutator.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <tuple>

namespace tlcat {

double alpha_prefactor(int alpha, int k, double q) {
    if (alpha == 1) return std::sqrt(qint(2 * k + 3, q) / qint(2 * k + 1, q));
    if (alpha == 0) return 1.0;
    if (alpha == -1 && k >= 1) return std::sqrt(qint(2 * k - 1, q) / qint(2 * k + 1, q));
    throw std::invalid_argument("alpha_prefactor: bad (alpha, k)");
}

QScale alpha_prefactor_exact(int alpha, int k) {
    if (alpha == 1) return QScale::qint(2 * k + 3, 1) * QScale::qint(2 * k + 1, -1);
    if (alpha == 0) return QScale{};
    if (alpha == -1 && k >= 1) return QScale::qint(2 * k - 1, 1) * QScale::qint(2 * k + 1, -1);
    throw std::invalid_argument("alpha_prefactor_exact: bad (alpha, k)");
}

ExactElement apply_phi_exact(ExactCalc& calc, int alpha, Side side, int k, const ExactElement& x, int offset) {
    const Triple t = phi_triple(alpha, side, k);
    const int r = fusion_defect(t.n, t.k, t.l);
    const int rest = x.top() - offset - 2 * t.l;
    if (rest < 0) throw GradingError("apply_phi_exact: block does not fit");
    ExactElement y = calc.left_jw(2 * t.l, offset, x);
    y = calc.pad(offset + 2 * t.n - r, calc.t(r), 2 * t.k - r + rest) * y;
    y = calc.left_jw(2 * t.n, offset, y);
    y = calc.left_jw(2 * t.k, offset + 2 * t.n, y);
    return y.scaled(QScale::from_monomial(coupling_monomial(t.n, t.k, t.l), -1));
}

ExactElement apply_phi_adjoint_exact(ExactCalc& calc, int alpha, Side side, int k, const ExactElement& x,
                                     int offset) {
    const Triple t = phi_triple(alpha, side, k);
    const int r = fusion_defect(t.n, t.k, t.l);
    const int rest = x.top() - offset - 2 * t.n - 2 * t.k;
    if (rest < 0) throw GradingError("apply_phi_adjoint_exact: block does not fit");
    ExactElement y = calc.left_jw(2 * t.n, offset, x);
    y = calc.left_jw(2 * t.k, offset + 2 * t.n, y);
    y = calc.pad(offset + 2 * t.n - r, adjoint(calc.t(r)), 2 * t.k - r + rest) * y;
    y = calc.left_jw(2 * t.l, offset, y);
    return y.scaled(QScale::from_monomial(coupling_monomial(t.n, t.k, t.l), -1));
}

// ---------------------------------------------------------- appendix suite

std::pair<ExactElement, ExactElement> appendix_A1(ExactCalc& calc, int alpha, int k) {
    ExactElement x = tensor(calc.t(2), calc.identity(2 * k));
    x = calc.right_jw(x, 2 * k, 0);
    ExactElement lhs = apply_phi_adjoint_exact(calc, -alpha, Side::L, k + alpha, x, 2).scaled(QScale::qint(3, 1));
    ExactElement rhs = calc.phi(alpha, Side::L, k).scaled(alpha_prefactor_exact(alpha, k));
    return {lhs, rhs};
}

std::pair<ExactElement, ExactElement> appendix_A2(ExactCalc& calc, int alpha, int k) {
    const int m = k + alpha;
    ExactElement lhs = apply_phi_exact(calc, -alpha, Side::L, m, calc.t(2 * m), 2 * m);
    ExactElement rhs = apply_phi_exact(calc, alpha, Side::R, k, calc.t(2 * k), 0);
    return {lhs, rhs};
}

ExactElement appendix_z(ExactCalc& calc, int k) {
    auto [lhs, rhs] = appendix_A2(calc, 0, k);
    return adjoint(rhs) * lhs;
}

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// a vector on a + b factors as a D^a x D^b batch
Batch split(const Eigen::VectorXd& v, long rows, long cols) {
    return Eigen::Map<const RowMat>(v.data(), rows, cols);
}

double max_row_norm(const Batch& x) { return x.rows() ? x.rowwise().norm().maxCoeff() : 0.0; }

}  // namespace

double appendix_z_numeric(const ConcreteRep& rep, int k) {
    const Batch t = rep.t_vector(2 * k).transpose();
    const Batch lhs = rep.apply_phi(0, Side::L, k, t, k);
    const Batch rhs = rep.apply_phi(0, Side::R, k, t, 0);
    return lhs.row(0).dot(rhs.row(0)) / rhs.row(0).squaredNorm();
}

double appendix_B1_residual(const ConcreteRep& rep, int alpha, int k) {
    const Eigen::MatrixXd& V = rep.irrep_basis(k);
    const long D = rep.dimB(), N = rep.power(k), d = V.cols();
    // sum_j F_1 e_j (x) xi (x) e_j, with sum_j F_1 e_j (x) e_j = [3]^{1/2} t_2
    const Eigen::VectorXd s = std::sqrt(qint(3, rep.q())) * rep.t_vector(2);
    Batch w = Batch::Zero(d, D * N * D);
    for (long a = 0; a < D; ++a)
        for (long x = 0; x < N; ++x)
            for (long b = 0; b < D; ++b) w.col((a * N + x) * D + b) = s(a * D + b) * V.row(x).transpose();
    const Batch lhs = rep.apply_phi_adjoint(-alpha, Side::R, k + alpha, w, 1);
    Batch rhs = rep.apply_phi(alpha, Side::R, k, V.transpose());
    rhs = alpha_prefactor(alpha, k, rep.q()) * rep.shift(rhs, k + alpha + 1, true);
    return max_row_norm(lhs - rhs);
}

double appendix_B2_residual(const ConcreteRep& rep, int alpha, int k, int trials, unsigned seed) {
    const Eigen::MatrixXd& V = rep.irrep_basis(k);
    const int m = k + alpha;
    const long D = rep.dimB(), Nk = rep.power(k), Nm = rep.power(m);
    // (1 x phi^{(-alpha)}_{m,R}) t_{2m}, rows: the first m factors
    const Batch big = rep.apply_phi(-alpha, Side::R, m, split(rep.t_vector(2 * m), Nm, Nm));
    const Batch tk = split(rep.t_vector(2 * k), Nk, Nk);
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Eigen::VectorXd c(V.cols());
        for (long i = 0; i < c.size(); ++i) c(i) = g(rng);
        const Eigen::VectorXd eta = (V * c).normalized();
        Batch out = Batch::Zero(Nm, D);
        for (long x = 0; x < Nk; ++x)
            if (eta(x) != 0.0) out += eta(x) * big.middleCols(x * D, D);
        const Eigen::VectorXd lhs = Eigen::Map<const Eigen::VectorXd>(RowMat(out).data(), Nm * D);
        const Batch zeta = (tk * eta).transpose();
        const Batch rhs = rep.shift(rep.apply_phi(alpha, Side::L, k, zeta), m + 1, false);
        worst = std::max(worst, (lhs - rhs.row(0).transpose()).norm());
    }
    return worst;
}

std::vector<IdentityResult> verify_appendix_identities(ExactCalc& calc, const ConcreteRep& rep, int k, double tol,
                                                       unsigned seed) {
    std::vector<IdentityResult> out;
    const double q = rep.q();
    auto exact_entry = [&](std::string id, const std::pair<ExactElement, ExactElement>& sides) {
        IdentityResult r{std::move(id), true, sides.first == sides.second, 0.0};
        r.residual = to_numeric(sides.first, q).distance(to_numeric(sides.second, q));
        out.push_back(r);
    };
    auto numeric_entry = [&](std::string id, double res) { out.push_back({std::move(id), false, res <= tol, res}); };
    const std::string ks = " k=" + std::to_string(k);
    for (int alpha : {1, 0, -1}) {
        const std::string a = alpha > 0 ? "(+1)" : alpha == 0 ? "(0)" : "(-1)";
        exact_entry("A1" + a + ks, appendix_A1(calc, alpha, k));
        exact_entry("A2" + a + ks, appendix_A2(calc, alpha, k));
        numeric_entry("B1" + a + ks, appendix_B1_residual(rep, alpha, k));
        numeric_entry("B2" + a + ks, appendix_B2_residual(rep, alpha, k, 5, seed + 17 * k + alpha + 1));
    }
    exact_entry("z" + ks, {appendix_z(calc, k), calc.identity(0)});
    numeric_entry("z numeric" + ks, std::abs(appendix_z_numeric(rep, k) - 1.0));
    return out;
}

// ------------------------------------------------------------ flip overlap

double flip_overlap_bound(int k, double q) {
    const double b2 = qint(2, q), r = qint(2 * k, q) / qint(2 * k + 2, q);
    return (qint(2 * k + 1, q) + b2 * b2 * (1.0 + r) + b2 / qint(2 * k + 2, q)) / qint(2 * k + 3, q);
}

FlipOverlap flip_overlap(const ConcreteRep& rep, int k) {
    if (k < 1) throw std::invalid_argument("flip_overlap: k >= 1");
    rep.check_budget(k + 2);
    const double q = rep.q();
    const Eigen::MatrixXd& V = rep.irrep_basis(k);
    const Batch Vt = V.transpose();
    FlipOverlap f;
    f.k = k;
    Batch y = rep.shift(rep.apply_phi(1, Side::R, k, Vt), k + 2, true);
    y = rep.apply_phi_adjoint(1, Side::L, k, y);
    f.G = (y * V).transpose();
    f.norm = operator_norm(f.G);
    f.bound = flip_overlap_bound(k, q);

    // the three-term expansion in the basis of H_k
    const Eigen::MatrixXd Sstar = (rep.shift(Vt, k, false) * V).transpose();
    const Eigen::MatrixXd S = (rep.shift(Vt, k, true) * V).transpose();
    Batch mid = rep.apply_map(rep.m_star_map(), 0, k, Vt);
    mid = rep.shift(mid, k + 1, false);
    mid = rep.apply_map(rep.m_map(), k - 1, k + 1, mid);
    const Eigen::MatrixXd M = (mid * V).transpose();
    const double b2 = qint(2, q), b3 = qint(2 * k + 3, q);
    const double c1 = qint(2 * k + 1, q) / b3;
    const double c2 = (1.0 + qint(2 * k, q) / qint(2 * k + 2, q)) / b3;
    const double c3 = b2 / (b3 * qint(2 * k + 2, q));
    const Eigen::MatrixXd X = c1 * Sstar - c2 * M + c3 * S;
    f.expansion_residual = (f.G - X).cwiseAbs().maxCoeff();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(X.rows(), X.cols());
    f.corrected_residual = (f.G - X - c2 * I).cwiseAbs().maxCoeff();
    return f;
}

// --------------------------------------------------------------- constants

LowerBoundConstants lower_bound_constants(double delta) {
    LowerBoundConstants c;
    c.delta = delta;
    c.q = q_from_delta(delta).q;
    const double q = c.q, q2 = q * q;
    const double b2 = qint(2, q), b3 = qint(3, q), b4 = qint(4, q), b5 = qint(5, q);
    const double u = 1.0 + q2;
    c.Cq = 2.0 * (1.0 / q2 - q2 - std::pow(b2, 4) * u * u / (b3 * b5) - b2 * b2 / (b4 * b4 * b3 * b5) -
                  2.0 * b2 * b2 * u / b5 - 2.0 * b2 / (b4 * b5) - 2.0 * std::pow(b2, 3) * u / (b4 * b3 * b5));
    const double bracket = 1.0 / (q2 * b3) - q2 / b3 - std::pow(b2, 4) * u * u / (b3 * b3 * b5) -
                           b2 * b2 / (b4 * b4 * b3 * b3 * b5) - 2.0 * b2 * b2 * u / (b3 * b5) -
                           2.0 * b2 / (b3 * b4 * b5) - 2.0 * std::pow(b2, 3) * u / (b4 * b3 * b3 * b5);
    c.valid = c.Cq >= 0.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    c.f = c.valid ? (std::sqrt(c.Cq) - 2.0 * (1.0 + q)) / std::sqrt(b3) : nan;
    c.g = bracket >= 0.0 ? std::sqrt(2.0) * std::sqrt(bracket) - 2.0 * (1.0 + q) / std::sqrt(b3) : nan;
    return c;
}

// -------------------------------------------------------------- T blocks

TOperator::TOperator(const ConcreteRep& rep, int K) : rep_(rep), K_(K) {
    if (K < 1) throw std::invalid_argument("TOperator: K >= 1");
    rep_.check_budget(K + 1);
}

bool TOperator::has(int k, int alpha) const {
    if (k < 0 || k > K_ || alpha < -1 || alpha > 1) return false;
    if (k == 0 && alpha != 1) return false;
    return k + alpha <= K_;
}

const TBlock& TOperator::block(int k, int alpha) const {
    auto key = std::make_pair(k, alpha);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return it->second;
    if (!has(k, alpha)) throw std::invalid_argument("TOperator: block outside the truncation");
    TBlock b;
    b.k = k;
    b.alpha = alpha;
    b.c = alpha_prefactor(alpha, k, rep_.q());
    const Batch Vt = rep_.irrep_basis(k).transpose();
    const int n = k + alpha + 1;
    b.XL = rep_.apply_phi(alpha, Side::L, k, Vt);
    b.XR = rep_.apply_phi(alpha, Side::R, k, Vt);
    b.YR = rep_.shift(b.XR, n, true);
    b.YL = rep_.shift(b.XL, n, false);
    return blocks_.emplace(key, std::move(b)).first->second;
}

const TOperator::Pair& TOperator::pair(TPart a, TPart b) const {
    auto key = std::make_tuple(a.k, a.alpha, b.k, b.alpha);
    auto it = pairs_.find(key);
    if (it != pairs_.end()) return it->second;
    const TBlock& x = block(a.k, a.alpha);
    const TBlock& y = block(b.k, b.alpha);
    Pair p;
    p.c = x.c * y.c;
    p.A[0] = x.XL * y.XL.transpose();
    p.B[0] = y.XR * x.XR.transpose();
    p.A[1] = x.XL * y.YR.transpose();
    p.B[1] = y.YL * x.XR.transpose();
    p.A[2] = x.YR * y.XL.transpose();
    p.B[2] = y.XR * x.YL.transpose();
    p.A[3] = x.YR * y.YR.transpose();
    p.B[3] = y.YL * x.YL.transpose();
    return pairs_.emplace(key, std::move(p)).first->second;
}

namespace {
constexpr double kSign[4] = {1.0, -1.0, -1.0, 1.0};
}  // namespace

Eigen::MatrixXd TOperator::gram_apply(TPart a, TPart b, const Eigen::MatrixXd& Xi) const {
    const int da = dim(a.k);
    if (a.k + a.alpha != b.k + b.alpha) return Eigen::MatrixXd::Zero(da, da);
    const Pair& p = pair(a, b);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(da, da);
    for (int t = 0; t < 4; ++t) r.noalias() += kSign[t] * (p.A[t] * Xi * p.B[t]);
    return p.c * r;
}

Eigen::MatrixXd TOperator::gram_dense(TPart a, TPart b) const {
    const long da = dim(a.k), db = dim(b.k);
    if (a.k + a.alpha != b.k + b.alpha) return Eigen::MatrixXd::Zero(da * da, db * db);
    const Pair& p = pair(a, b);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(da * da, db * db);
    for (int t = 0; t < 4; ++t) r += kSign[t] * kron(p.A[t], p.B[t].transpose());
    return p.c * r;
}

long TOperator::block_sum_dim(const std::vector<int>& blocks) const {
    long n = 0;
    for (int k : blocks) n += static_cast<long>(dim(k)) * dim(k);
    return n;
}

std::function<Eigen::VectorXd(const Eigen::VectorXd&)> TOperator::gram_operator(const std::vector<TPart>& parts,
                                                                               const std::vector<int>& blocks) const {
    std::vector<long> start;
    long n = 0;
    for (int k : blocks) {
        start.push_back(n);
        n += static_cast<long>(dim(k)) * dim(k);
    }
    for (const auto& a : parts)
        for (const auto& b : parts)
            if (a.k + a.alpha == b.k + b.alpha) pair(a, b);  // fill the cache up front
    return [this, parts, blocks, start, n](const Eigen::VectorXd& v) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
        for (size_t ib = 0; ib < blocks.size(); ++ib) {
            const long db = dim(blocks[ib]);
            const Eigen::MatrixXd Xi = Eigen::Map<const RowMat>(v.data() + start[ib], db, db);
            for (size_t ia = 0; ia < blocks.size(); ++ia) {
                const long da = dim(blocks[ia]);
                RowMat acc = RowMat::Zero(da, da);
                bool any = false;
                for (const auto& pa : parts) {
                    if (pa.k != blocks[ia]) continue;
                    for (const auto& pb : parts) {
                        if (pb.k != blocks[ib] || pa.k + pa.alpha != pb.k + pb.alpha) continue;
                        acc += gram_apply(pa, pb, Xi);
                        any = true;
                    }
                }
                if (any) out.segment(start[ia], da * da) += Eigen::Map<const Eigen::VectorXd>(acc.data(), da * da);
            }
        }
        return out;
    };
}

Eigen::MatrixXd TOperator::gram_dense(const std::vector<TPart>& parts, const std::vector<int>& blocks) const {
    const long n = block_sum_dim(blocks);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    long ra = 0;
    for (int ka : blocks) {
        const long na = static_cast<long>(dim(ka)) * dim(ka);
        long rb = 0;
        for (int kb : blocks) {
            const long nb = static_cast<long>(dim(kb)) * dim(kb);
            for (const auto& pa : parts)
                for (const auto& pb : parts)
                    if (pa.k == ka && pb.k == kb && pa.k + pa.alpha == pb.k + pb.alpha)
                        M.block(ra, rb, na, nb) += gram_dense(pa, pb);
            rb += nb;
        }
        ra += na;
    }
    return M;
}

double TOperator::vacuum_residual() const {
    const TBlock& b = block(0, 1);
    return b.c * (b.XL.transpose() * b.XR - b.YR.transpose() * b.YL).norm();
}

double TOperator::target_residual(int k, int alpha) const {
    const TBlock& b = block(k, alpha);
    const int j = k + alpha;
    auto left = [&](const Batch& x) { return rep_.apply_jw(2 * j, 2, rep_.apply_jw(2, 0, x)); };
    auto right = [&](const Batch& x) { return rep_.apply_jw(2, 2 * j, rep_.apply_jw(2 * j, 0, x)); };
    double r = 0.0;
    r = std::max(r, max_row_norm(left(b.XL) - b.XL));
    r = std::max(r, max_row_norm(left(b.YR) - b.YR));
    r = std::max(r, max_row_norm(right(b.XR) - b.XR));
    r = std::max(r, max_row_norm(right(b.YL) - b.YL));
    return r;
}

double TOperator::extreme_eigenvalue(long n, const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op,
                                     bool largest) const {
    if (n > kDenseCutoff) return lanczos_extreme(n, op, largest);
    Eigen::MatrixXd M(n, n);
    for (long i = 0; i < n; ++i) M.col(i) = op(Eigen::VectorXd::Unit(n, i));
    M = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    return largest ? es.eigenvalues().maxCoeff() : es.eigenvalues().minCoeff();
}

double TOperator::block_norm(int k, int alpha) const {
    const std::vector<int> blocks{k};
    const double l = extreme_eigenvalue(block_sum_dim(blocks), gram_operator({{k, alpha}}, blocks), true);
    return std::sqrt(std::max(0.0, l));
}

double TOperator::block_norm_sum0m(int k) const {
    std::vector<TPart> parts;
    for (int a : {0, -1})
        if (has(k, a)) parts.push_back({k, a});
    const std::vector<int> blocks{k};
    const double l = extreme_eigenvalue(block_sum_dim(blocks), gram_operator(parts, blocks), true);
    return std::sqrt(std::max(0.0, l));
}

double TOperator::sigma_min_plus(int k) const {
    const std::vector<int> blocks{k};
    const double l = extreme_eigenvalue(block_sum_dim(blocks), gram_operator({{k, 1}}, blocks), false);
    return std::sqrt(std::max(0.0, l));
}

double TOperator::norm_sum0m_assembled() const {
    std::vector<TPart> parts;
    std::vector<int> blocks;
    for (int k = 1; k <= K_; ++k) {
        blocks.push_back(k);
        for (int a : {0, -1})
            if (has(k, a)) parts.push_back({k, a});
    }
    const double l = extreme_eigenvalue(block_sum_dim(blocks), gram_operator(parts, blocks), true);
    return std::sqrt(std::max(0.0, l));
}

Eigen::MatrixXd TOperator::interior_TT() const {
    std::vector<TPart> parts;
    std::vector<int> blocks;
    for (int k = 1; k <= K_ - 1; ++k) {
        blocks.push_back(k);
        for (int a : {1, 0, -1})
            if (has(k, a)) parts.push_back({k, a});
    }
    return gram_dense(parts, blocks);
}

Eigen::MatrixXd TOperator::interior_phi_hat() const {
    const Eigen::MatrixXd TT = interior_TT();
    return Eigen::MatrixXd::Identity(TT.rows(), TT.cols()) - TT / (2.0 * qint(3, rep_.q()));
}

// ----------------------------------------------------------------- Lanczos

double lanczos_extreme(long n, const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op, bool largest,
                       int max_iter, double tol, unsigned seed) {
    if (n <= 0) throw std::invalid_argument("lanczos_extreme: empty space");
    const int m_max = static_cast<int>(std::min<long>(n, max_iter));
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXd Q(n, m_max);
    Eigen::VectorXd v(n);
    for (long i = 0; i < n; ++i) v(i) = g(rng);
    Q.col(0) = v.normalized();
    std::vector<double> alpha, beta;
    double theta = 0.0;
    for (int j = 0; j < m_max; ++j) {
        Eigen::VectorXd w = op(Q.col(j));
        alpha.push_back(Q.col(j).dot(w));
        // full reorthogonalization, twice
        for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).transpose() * w);
        const double b = w.norm();
        Eigen::MatrixXd Tm = Eigen::MatrixXd::Zero(j + 1, j + 1);
        for (int i = 0; i <= j; ++i) {
            Tm(i, i) = alpha[i];
            if (i < j) Tm(i, i + 1) = Tm(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tm);
        const long idx = largest ? j : 0;
        theta = es.eigenvalues()(idx);
        const double resid = std::abs(b * es.eigenvectors()(j, idx));
        if (resid <= tol * std::max(1.0, std::abs(theta)) || b < 1e-14 || j + 1 == m_max) break;
        beta.push_back(b);
        Q.col(j + 1) = w / b;
    }
    return theta;
}

}  // namespace tlcat
