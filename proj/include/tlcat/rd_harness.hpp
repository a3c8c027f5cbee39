#pragma once
/**
 * @file rd_harness.hpp
 * @brief Convolution on the dual side, block by block, and the norm
 *        estimates behind rapid decay.
 *
 * A dual element is a finitely supported family of d_k x d_k matrices in the
 * bases irrep_basis(k). rho_l^{n x k} is compressed to a (d_n d_k) x d_l
 * matrix R with row index i*d_k + j; R^T R = C_{(n,k,l)} 1.
 */

#include <Eigen/Dense>

#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "tlcat/concrete_rep.hpp"

namespace tlcat {

/// {k : U^l is contained in U^n (x) U^k}
std::vector<int> fusion_neighbors(int n, int l);

struct DualElement {
    std::map<int, Eigen::MatrixXd> blocks;

    /// (sum_k d_k |x_k|_HS^2)^{1/2}
    double l2_norm() const;
    DualElement operator+(const DualElement& o) const;
    DualElement operator-(const DualElement& o) const;
    double max_abs_diff(const DualElement& o) const;
};

Eigen::MatrixXd gaussian_matrix(long rows, long cols, std::mt19937& rng);

class DualConvolution {
public:
    explicit DualConvolution(const ConcreteRep& rep) : rep_(rep) {}
    const ConcreteRep& rep() const { return rep_; }
    int dim(int k) const { return static_cast<int>(rep_.irrep_basis(k).cols()); }
    /// m_k = [2k+1]_q
    double m(int k) const;

    /// rho_l^{n x k} compressed to the irrep bases
    const Eigen::MatrixXd& rho(int n, int k, int l) const;
    /// C^{-1} R R^T, the projection onto the copy of H_l in H_n (x) H_k
    Eigen::MatrixXd delta_projection(int n, int k, int l) const;

    /// the l-block of x_n * y_k: (m_n m_k / m_l) C^{-1} R^T (x_n (x) y_k) R
    Eigen::MatrixXd convolve_block(int n, int k, int l, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) const;
    /// the same for a general w on H_n (x) H_k
    Eigen::MatrixXd convolve_block(int n, int k, int l, const Eigen::MatrixXd& w) const;
    /// blocks above max_block (when nonnegative) are not computed
    DualElement convolve(const DualElement& x, const DualElement& y, int max_block = -1) const;

    DualElement random_element(const std::vector<int>& support, std::mt19937& rng) const;
    DualElement unit() const;

private:
    const ConcreteRep& rep_;
    mutable std::map<std::tuple<int, int, int>, Eigen::MatrixXd> rho_;
};

/// max |(x*y)*z - x*(y*z)| and max(|e*x - x|, |x*e - x|) over seeded random triples
struct CoherenceResult {
    double assoc = 0.0, unit = 0.0;
    int trials = 0;
};
CoherenceResult convolution_coherence(const DualConvolution& conv, int max_block, int trials, unsigned seed);

/// max relative deviation between the two sides of the l2 identity over random w = x (x) y
double rd_l2_identity(const DualConvolution& conv, int n, int k, int l, int trials, unsigned seed);

struct HSScanRow {
    int n = 0, k = 0, l = 0, r = 0;
    double max_ratio = 0.0;      // max over the random trials
    double refined_ratio = 0.0;  // after alternating ascent from the best trial
    double bound = 0.0;          // [r+1]^{-1}[2][3] D0^{-1} (d_n d_k / d_l)^{1/2}
    double margin = 0.0;         // bound - refined_ratio
    double branch_ratio = 0.0;   // |rho^* (x (x) y) rho|_HS / (|x| |y|), refined
    double branch_bound = 0.0;   // [r+1]^{-1}, times [2][3] when r is odd
};
HSScanRow hs_inequality_scan(const DualConvolution& conv, int n, int k, int l, int trials, unsigned seed,
                             double D0);

/// uniform constant [2][3] D0^{-1} (1 - q^2)^{-1}
double rd_uniform_constant(double q, double D0);

/**
 * |x * y| / (|x| |y|) for x on block n and y spread over blocks 0..kmax,
 * against D (2n+1) with D the largest single-block ratio seen.
 */
struct RDOperatorCheck {
    int n = 0;
    double measured = 0.0;
    double D = 0.0;
    double bound = 0.0;
};
RDOperatorCheck rd_operator_check(const DualConvolution& conv, int n, int kmax, int trials, unsigned seed);

}  // namespace tlcat
