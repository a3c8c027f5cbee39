#pragma once
/**
 * @file commutator.hpp
 * @brief Blocks of the commutator operator T, the appendix identities behind
 *        their formulas, the flip overlap and the lower-bound constants.
 *
 * On H_k (x) H_k a vector is a d_k x d_k matrix Xi in the orthonormal basis
 * irrep_basis(k); an operator A (x) B acts as Xi -> A Xi B^T.
 */

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tlcat/concrete_rep.hpp"
#include "tlcat/tl_elements.hpp"

namespace tlcat {

/// prefactor of T^{(alpha)}_k and of A_1, B_1: ([2k+3]/[2k+1])^{1/2}, 1, ([2k-1]/[2k+1])^{1/2}
double alpha_prefactor(int alpha, int k, double q);
QScale alpha_prefactor_exact(int alpha, int k);

/// (1_offset x phi x 1) * x, factored through the JW brackets
ExactElement apply_phi_exact(ExactCalc& calc, int alpha, Side side, int k, const ExactElement& x, int offset);
/// (1_offset x phi^* x 1) * x
ExactElement apply_phi_adjoint_exact(ExactCalc& calc, int alpha, Side side, int k, const ExactElement& x,
                                     int offset);

// ---------------------------------------------------------- appendix suite

struct IdentityResult {
    std::string id;      // e.g. "A1(+1) k=2"
    bool exact = false;  // decided in Q(q), otherwise a matrix residual
    bool pass = false;
    double residual = 0.0;
};

/// A_1 for one alpha: both sides as exact elements of TL_{2k, 2k+2+2alpha}
std::pair<ExactElement, ExactElement> appendix_A1(ExactCalc& calc, int alpha, int k);
/// A_2 for one alpha: both sides as exact elements of TL_{0, 4k+2+2alpha}
std::pair<ExactElement, ExactElement> appendix_A2(ExactCalc& calc, int alpha, int k);
/// the scalar z = t_{2k}^* (phi^{(0)}_{k,R}^* x 1)(1 x phi^{(0)}_{k,L}) t_{2k}, exactly
ExactElement appendix_z(ExactCalc& calc, int k);
/// same scalar as <lhs, rhs>/|rhs|^2 with represented vectors
double appendix_z_numeric(const ConcreteRep& rep, int k);
/// max residual of B_1 over a basis of H_k
double appendix_B1_residual(const ConcreteRep& rep, int alpha, int k);
/// max residual of B_2 over random eta in H_k (seeded)
double appendix_B2_residual(const ConcreteRep& rep, int alpha, int k, int trials, unsigned seed);

std::vector<IdentityResult> verify_appendix_identities(ExactCalc& calc, const ConcreteRep& rep, int k,
                                                       double tol = 1e-9, unsigned seed = 1);

// ------------------------------------------------------------ flip overlap

struct FlipOverlap {
    int k = 0;
    double norm = 0.0;   // |phi_L^* sigma phi_R| on H_k
    double bound = 0.0;  // the lemma's closed form
    double expansion_residual = 0.0;  // |G - (c1 S^* - c2 M + c3 S)|_max
    /// with the missing + c2 p_{2k}: the sum over F1 e_i only spans 1 - nu nu^*, not the identity
    double corrected_residual = 0.0;
    Eigen::MatrixXd G;  // phi_L^* sigma phi_R in the basis of H_k
};

double flip_overlap_bound(int k, double q);
FlipOverlap flip_overlap(const ConcreteRep& rep, int k);

// --------------------------------------------------------------- constants

struct LowerBoundConstants {
    double delta = 0, q = 0;
    double Cq = 0;
    bool valid = false;  // C(q) >= 0, so that f is real
    double f = 0;        // from C(q); NaN when invalid
    double g = 0;        // the second closed form; equals f when valid
};
LowerBoundConstants lower_bound_constants(double delta);

// -------------------------------------------------------------- T blocks

/// T^{(alpha)}_k through its factor maps; rows are images of the basis of H_k
struct TBlock {
    int k = 0, alpha = 0;
    double c = 0.0;
    Eigen::MatrixXd XL, XR, YR, YL;  // phi_L, phi_R, sigma phi_R, sigma^* phi_L
};

/// a term of T restricted to the source block k
struct TPart {
    int k, alpha;
};

/**
 * The truncation of T to blocks 0..K: a part (k, alpha) is kept when its
 * target k + alpha is at most K.
 */
class TOperator {
public:
    TOperator(const ConcreteRep& rep, int K);
    int K() const { return K_; }
    const ConcreteRep& rep() const { return rep_; }
    int dim(int k) const { return static_cast<int>(rep_.irrep_basis(k).cols()); }
    bool has(int k, int alpha) const;

    /// T_a^* T_b Xi, zero unless both parts have the same target
    Eigen::MatrixXd gram_apply(TPart a, TPart b, const Eigen::MatrixXd& Xi) const;
    /// the same as a dense (d_a^2 x d_b^2) matrix in row-major vec order
    Eigen::MatrixXd gram_dense(TPart a, TPart b) const;
    /// (sum parts)^* (sum parts) on the direct sum of the source blocks, as a function
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gram_operator(const std::vector<TPart>& parts,
                                                                        const std::vector<int>& blocks) const;
    Eigen::MatrixXd gram_dense(const std::vector<TPart>& parts, const std::vector<int>& blocks) const;
    long block_sum_dim(const std::vector<int>& blocks) const;

    /// |T^{(+1)}_0 xi_0| from the block formula at k = 0
    double vacuum_residual() const;
    /// how far the images of T^{(alpha)}_k stick out of H_1 (x) H_{k+alpha} and H_{k+alpha} (x) H_1
    double target_residual(int k, int alpha) const;

    double block_norm(int k, int alpha) const;
    double block_norm_sum0m(int k) const;  // |T^{(0)}_k + T^{(-1)}_k|
    double sigma_min_plus(int k) const;    // smallest singular value of T^{(+1)}_k
    /// |(T^{(0)} + T^{(-1)})| on blocks 1..K, cross terms included
    double norm_sum0m_assembled() const;

    /// T^*T on interior blocks 1..K-1 as a dense matrix, and Phi-hat = 1 - T^*T/(2[3])
    Eigen::MatrixXd interior_TT() const;
    Eigen::MatrixXd interior_phi_hat() const;

    /// extremal eigenvalue of a symmetric operator on dimension n; dense below the cutoff
    double extreme_eigenvalue(long n, const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op,
                              bool largest) const;
    static constexpr long kDenseCutoff = 2500;

private:
    const TBlock& block(int k, int alpha) const;
    struct Pair {
        Eigen::MatrixXd A[4], B[4];
        double c;
    };
    const Pair& pair(TPart a, TPart b) const;

    const ConcreteRep& rep_;
    int K_;
    mutable std::map<std::pair<int, int>, TBlock> blocks_;
    mutable std::map<std::tuple<int, int, int, int>, Pair> pairs_;
};

/// smallest/largest eigenvalue of a symmetric operator, by Lanczos with full reorthogonalization
double lanczos_extreme(long n, const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op, bool largest,
                       int max_iter = 300, double tol = 1e-11, unsigned seed = 3);

}  // namespace tlcat
