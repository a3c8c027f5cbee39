#include "tlcat/rd_harness.hpp"

#include <algorithm>
#include <cmath>

#include "tlcat/qarith.hpp"

namespace tlcat {

std::vector<int> fusion_neighbors(int n, int l) {
    std::vector<int> out;
    // U^l in U^n (x) U^k iff |n - k| <= l <= n + k
    for (int k = std::max(l - n, n - l); k <= n + l; ++k)
        if (k >= 0 && admissible(n, k, l)) out.push_back(k);
    return out;
}

// --------------------------------------------------------------- DualElement

double DualElement::l2_norm() const {
    double s = 0;
    for (const auto& [k, x] : blocks) s += static_cast<double>(x.rows()) * x.squaredNorm();
    return std::sqrt(s);
}

DualElement DualElement::operator+(const DualElement& o) const {
    DualElement r = *this;
    for (const auto& [k, x] : o.blocks) {
        auto it = r.blocks.find(k);
        if (it == r.blocks.end()) r.blocks.emplace(k, x);
        else it->second += x;
    }
    return r;
}

DualElement DualElement::operator-(const DualElement& o) const {
    DualElement neg = o;
    for (auto& [k, x] : neg.blocks) x = -x;
    return *this + neg;
}

double DualElement::max_abs_diff(const DualElement& o) const {
    DualElement d = *this - o;
    double m = 0;
    for (const auto& [k, x] : d.blocks) m = std::max(m, x.cwiseAbs().maxCoeff());
    return m;
}

Eigen::MatrixXd gaussian_matrix(long rows, long cols, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(rows, cols);
    for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i) m(i, j) = g(rng);
    return m;
}

// ----------------------------------------------------------- DualConvolution

double DualConvolution::m(int k) const { return qint(2 * k + 1, rep_.q()); }

const Eigen::MatrixXd& DualConvolution::rho(int n, int k, int l) const {
    const auto key = std::make_tuple(n, k, l);
    if (auto it = rho_.find(key); it != rho_.end()) return it->second;
    rep_.check_budget(n + k);
    const Eigen::MatrixXd& Vn = rep_.irrep_basis(n);
    const Eigen::MatrixXd& Vk = rep_.irrep_basis(k);
    const Eigen::MatrixXd& Vl = rep_.irrep_basis(l);
    const Batch X = rep_.apply_rho(n, k, l, Batch(Vl.transpose()));
    const long dn = Vn.cols(), dk = Vk.cols(), dl = Vl.cols();
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::MatrixXd R(dn * dk, dl);
    Eigen::VectorXd row;
    for (long c = 0; c < dl; ++c) {
        row = X.row(c).transpose();
        Eigen::Map<const RowMat> M(row.data(), Vn.rows(), Vk.rows());
        const Eigen::MatrixXd S = Vn.transpose() * M * Vk;
        for (long i = 0; i < dn; ++i)
            for (long j = 0; j < dk; ++j) R(i * dk + j, c) = S(i, j);
    }
    return rho_.emplace(key, std::move(R)).first->second;
}

Eigen::MatrixXd DualConvolution::delta_projection(int n, int k, int l) const {
    const Eigen::MatrixXd& R = rho(n, k, l);
    return R * R.transpose() / coupling_constant_numeric(n, k, l, rep_.q());
}

Eigen::MatrixXd DualConvolution::convolve_block(int n, int k, int l, const Eigen::MatrixXd& w) const {
    const Eigen::MatrixXd& R = rho(n, k, l);
    const double c = m(n) * m(k) / (m(l) * coupling_constant_numeric(n, k, l, rep_.q()));
    return c * (R.transpose() * w * R);
}

Eigen::MatrixXd DualConvolution::convolve_block(int n, int k, int l, const Eigen::MatrixXd& x,
                                                const Eigen::MatrixXd& y) const {
    return convolve_block(n, k, l, kron(x, y));
}

DualElement DualConvolution::convolve(const DualElement& x, const DualElement& y, int max_block) const {
    DualElement out;
    for (const auto& [n, xn] : x.blocks)
        for (const auto& [k, yk] : y.blocks) {
            const Eigen::MatrixXd w = kron(xn, yk);
            for (int r = 0; r <= 2 * std::min(n, k); ++r) {
                const int l = n + k - r;
                if (max_block >= 0 && l > max_block) continue;
                Eigen::MatrixXd z = convolve_block(n, k, l, w);
                auto it = out.blocks.find(l);
                if (it == out.blocks.end()) out.blocks.emplace(l, std::move(z));
                else it->second += z;
            }
        }
    return out;
}

DualElement DualConvolution::random_element(const std::vector<int>& support, std::mt19937& rng) const {
    DualElement x;
    for (int k : support) x.blocks.emplace(k, gaussian_matrix(dim(k), dim(k), rng));
    return x;
}

DualElement DualConvolution::unit() const {
    DualElement e;
    e.blocks.emplace(0, Eigen::MatrixXd::Ones(1, 1));
    return e;
}

// ----------------------------------------------------------------- checks

namespace {

/// R^T (x (x) y) R without forming the Kronecker product
Eigen::MatrixXd image(const Eigen::MatrixXd& R, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    const long dn = x.rows(), dk = y.rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(R.cols(), R.cols());
    for (long i = 0; i < dn; ++i) {
        const Eigen::MatrixXd Ri = R.middleRows(i * dk, dk);
        Eigen::MatrixXd yRi = Eigen::MatrixXd::Zero(dk, R.cols());
        for (long j = 0; j < dn; ++j)
            if (x(i, j) != 0.0) yRi += x(i, j) * (y * R.middleRows(j * dk, dk));
        out.noalias() += Ri.transpose() * yRi;
    }
    return out;
}

struct BilinearSup {
    double sampled = 0.0, refined = 0.0;
};

/// sup of |R^T (x (x) y) R|_HS over unit x, y: random starts, then alternating ascent from the best
BilinearSup bilinear_sup(const Eigen::MatrixXd& R, long dn, long dk, int trials, std::mt19937& rng) {
    BilinearSup s;
    Eigen::MatrixXd bx, by;
    for (int t = 0; t < trials; ++t) {
        Eigen::MatrixXd x = gaussian_matrix(dn, dn, rng), y = gaussian_matrix(dk, dk, rng);
        x.normalize();
        y.normalize();
        const double v = image(R, x, y).norm();
        if (v >= s.sampled) s.sampled = v, bx = x, by = y;
    }
    s.refined = s.sampled;
    if (trials == 0) return s;
    for (int it = 0; it < 200; ++it) {
        // the gradient of |image|^2 in x is the pairing of R z R^T against y, and symmetrically in y
        const Eigen::MatrixXd z = image(R, bx, by);
        const Eigen::MatrixXd W = R * z * R.transpose();
        Eigen::MatrixXd gx(dn, dn);
        for (long i = 0; i < dn; ++i)
            for (long j = 0; j < dn; ++j) gx(i, j) = (W.block(i * dk, j * dk, dk, dk).array() * by.array()).sum();
        if (gx.norm() == 0.0) break;
        bx = gx.normalized();
        const Eigen::MatrixXd z2 = image(R, bx, by);
        const Eigen::MatrixXd W2 = R * z2 * R.transpose();
        Eigen::MatrixXd gy = Eigen::MatrixXd::Zero(dk, dk);
        for (long i = 0; i < dn; ++i)
            for (long j = 0; j < dn; ++j) gy += bx(i, j) * W2.block(i * dk, j * dk, dk, dk);
        if (gy.norm() == 0.0) break;
        by = gy.normalized();
        const double v = image(R, bx, by).norm();
        const bool done = v - s.refined < 1e-13 * std::max(v, 1.0);
        s.refined = std::max(s.refined, v);
        if (done) break;
    }
    return s;
}

}  // namespace

CoherenceResult convolution_coherence(const DualConvolution& conv, int max_block, int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<int> support;
    for (int k = 0; k <= max_block; ++k) support.push_back(k);
    const DualElement e = conv.unit();
    CoherenceResult res;
    res.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const DualElement x = conv.random_element(support, rng);
        const DualElement y = conv.random_element(support, rng);
        const DualElement z = conv.random_element(support, rng);
        // blocks above 2 max_block would need irrep bases that are out of reach; compare up to there
        const int top = 2 * max_block;
        const DualElement lhs = conv.convolve(conv.convolve(x, y, top), z, top);
        const DualElement rhs = conv.convolve(x, conv.convolve(y, z, top), top);
        const double scale = std::max({1.0, lhs.l2_norm()});
        res.assoc = std::max(res.assoc, lhs.max_abs_diff(rhs) / scale);
        res.unit = std::max({res.unit, conv.convolve(e, x).max_abs_diff(x), conv.convolve(x, e).max_abs_diff(x)});
    }
    return res;
}

double rd_l2_identity(const DualConvolution& conv, int n, int k, int l, int trials, unsigned seed) {
    std::mt19937 rng(seed);
    const int dn = conv.dim(n), dk = conv.dim(k), dl = conv.dim(l);
    const Eigen::MatrixXd P = conv.delta_projection(n, k, l);
    const double mr = conv.m(n) * conv.m(k) / conv.m(l);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Eigen::MatrixXd w = kron(gaussian_matrix(dn, dn, rng), gaussian_matrix(dk, dk, rng));
        const double lhs = std::sqrt(static_cast<double>(dl)) * conv.convolve_block(n, k, l, w).norm();
        const double rhs = std::sqrt(mr * dn * dk) * (P * w * P).norm();
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    return worst;
}

HSScanRow hs_inequality_scan(const DualConvolution& conv, int n, int k, int l, int trials, unsigned seed,
                             double D0) {
    std::mt19937 rng(seed);
    const double q = conv.rep().q();
    HSScanRow row;
    row.n = n, row.k = k, row.l = l;
    row.r = fusion_defect(n, k, l);
    const int dn = conv.dim(n), dk = conv.dim(k), dl = conv.dim(l);
    const double C = coupling_constant_numeric(n, k, l, q);
    const double window = std::sqrt(static_cast<double>(dn) * dk / dl);
    // |Delta(P_l)(x (x) y)Delta(P_l)|_HS = C^{-1} |rho^*(x (x) y) rho|_HS
    const BilinearSup s = bilinear_sup(conv.rho(n, k, l), dn, dk, trials, rng);
    row.max_ratio = s.sampled / C * window;
    row.refined_ratio = s.refined / C * window;
    row.bound = qint(2, q) * qint(3, q) / (qint(row.r + 1, q) * D0) * window;
    row.margin = row.bound - row.refined_ratio;
    row.branch_ratio = s.refined;
    row.branch_bound = (row.r % 2 ? qint(2, q) * qint(3, q) : 1.0) / qint(row.r + 1, q);
    return row;
}

double rd_uniform_constant(double q, double D0) { return qint(2, q) * qint(3, q) / (D0 * (1.0 - q * q)); }

RDOperatorCheck rd_operator_check(const DualConvolution& conv, int n, int kmax, int trials, unsigned seed) {
    std::mt19937 rng(seed);
    RDOperatorCheck res;
    res.n = n;
    // single-block constant: |P_l(x*y)|_l2 / (|x|_l2 |y|_l2)
    for (int k = 0; k <= kmax; ++k)
        for (int r = 0; r <= 2 * std::min(n, k); ++r) {
            const int l = n + k - r;
            const int dn = conv.dim(n), dk = conv.dim(k), dl = conv.dim(l);
            const BilinearSup s = bilinear_sup(conv.rho(n, k, l), dn, dk, 10, rng);
            const double c = conv.m(n) * conv.m(k) / (conv.m(l) * coupling_constant_numeric(n, k, l, conv.rep().q()));
            res.D = std::max(res.D, s.refined * c * std::sqrt(static_cast<double>(dl) / (dn * dk)));
        }
    res.bound = res.D * (2 * n + 1);
    std::vector<int> support;
    for (int k = 0; k <= kmax; ++k) support.push_back(k);
    for (int t = 0; t < trials; ++t) {
        const DualElement x = conv.random_element({n}, rng);
        const DualElement y = conv.random_element(support, rng);
        res.measured = std::max(res.measured, conv.convolve(x, y).l2_norm() / (x.l2_norm() * y.l2_norm()));
    }
    return res;
}

}  // namespace tlcat
