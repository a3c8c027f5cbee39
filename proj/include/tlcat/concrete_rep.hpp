#pragma once
/**
 * @file concrete_rep.hpp
 * @brief The 2-cabled TL category realized on tensor powers of a finite
 *        dimensional C*-algebra B with its delta-trace.
 *
 * Vectors in B^{(x)n} use the psi-orthonormal basis b = sqrt(dimB/n_i) e_ab,
 * factor 0 most significant. Internally a batch of vectors is an Eigen
 * matrix with one row per vector (columns index the tensor basis), so that
 * operators acting on a block of factors touch contiguous memory.
 */

#include <Eigen/Dense>

#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tlcat/tl_elements.hpp"

namespace tlcat {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RepresentationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// default cap on (dim B)^k; TLCAT_BUDGET overrides it
constexpr long kDefaultBudget = 20000;
long budget_from_env(long fallback = kDefaultBudget);

struct AlgebraSpec {
    std::vector<int> blocks;
    int dimB = 0;
    double delta = 0.0;
    double q = 1.0;

    /// "1,1,1,1,1" is C(X_5), "2,1" is M_2 + C
    static AlgebraSpec parse(const std::string& s);
    static AlgebraSpec from_blocks(std::vector<int> blocks);
    std::string to_string() const;
};

/// linear map between tensor powers given by its nonzero entries
struct SparseMap {
    int in_factors = 0, out_factors = 0;
    struct Entry {
        long out, in;
        double c;
    };
    std::vector<Entry> entries;
    SparseMap transposed() const;
};

using Batch = Eigen::MatrixXd;  // rows: vectors, cols: tensor basis

class ConcreteRep {
public:
    explicit ConcreteRep(const AlgebraSpec& spec, long budget = budget_from_env());

    const AlgebraSpec& spec() const { return spec_; }
    int dimB() const { return spec_.dimB; }
    double delta() const { return spec_.delta; }
    double q() const { return spec_.q; }
    long budget() const { return budget_; }
    /// throws ResourceError if (dim B)^k exceeds the budget
    void check_budget(int k) const;
    long power(int n) const;

    const SparseMap& m_map() const { return m_; }
    const SparseMap& m_star_map() const { return mstar_; }
    const SparseMap& nu_map() const { return nu_; }
    const SparseMap& nu_star_map() const { return nustar_; }
    Eigen::MatrixXd dense(const SparseMap& s) const;
    /// coordinates of b_ab in block i
    int basis_index(int block, int a, int b) const;

    /// apply M to factors [f, f + M.in_factors) of an n-factor batch
    Batch apply_map(const SparseMap& M, int f, int n, const Batch& x) const;
    /// evaluate a diagram with even gradings, scaled by c, on a batch
    Batch apply_diagram(const TLDiagram& d, const Batch& x, double c = 1.0) const;
    Batch apply(const NumericElement& e, const Batch& x) const;
    Batch apply(const ExactElement& e, const Batch& x) const { return apply(to_numeric(e, q()), x); }
    /// (1_a x p_y x 1_b) on strands, through the bracket factorization
    Batch apply_jw(int y, int a, const Batch& x) const;
    /// rho_l^{n x k} on the l factors starting at factor `offset`; other factors pass through
    Batch apply_rho(int n, int k, int l, const Batch& x, int offset = 0) const;
    Batch apply_phi(int alpha, Side side, int k, const Batch& x, int offset = 0) const;
    /// adjoint of apply_phi (ends with p_{2k})
    Batch apply_phi_adjoint(int alpha, Side side, int k, const Batch& x, int offset = 0) const;
    /// number of tensor factors of a batch of width w
    int factors(long w) const;
    /// cyclic shift of an n-factor batch: last factor to the front (or back)
    Batch shift(const Batch& x, int n, bool last_to_front = true) const;
    /// sigma on a product of n1 and n2 factors: x (x) y -> y (x) x
    Batch swap_blocks(const Batch& x, int n1, int n2) const;

    /// dense matrix (target x source) of a TL element with even gradings
    Eigen::MatrixXd represent(const NumericElement& e) const;
    Eigen::MatrixXd represent(const ExactElement& e) const { return represent(to_numeric(e, q())); }
    Eigen::MatrixXd represent_jw(int k) const;  // p_{2k}
    /// orthonormal basis of H_k = range of p_{2k}, one vector per column
    const Eigen::MatrixXd& irrep_basis(int k) const;
    /// numeric rank of p_{2k}, singular values > 1e-8
    int irrep_dimension(int k) const;
    /// rank through compression onto H_{k-1} (x) H_1 (for k >= 2)
    int irrep_dimension_compressed(int k) const;

    /// F_1 in the basis of irrep_basis(1): sum_j F_1 e_j (x) e_j = [3]^{1/2} t_2
    Eigen::MatrixXd F1() const;
    /// t_2 as a vector of B (x) B
    Eigen::VectorXd t_vector(int r) const;

    NumericCalc& calc() const { return *calc_; }

private:
    AlgebraSpec spec_;
    long budget_;
    SparseMap m_, mstar_, nu_, nustar_;
    std::vector<int> offset_;
    std::unique_ptr<NumericCalc> calc_;
    mutable std::unordered_map<int, Eigen::MatrixXd> basis_;
    struct Op {
        int kind;  // 0 nu*, 1 m, 2 nu, 3 m*
        int factor;
    };
    struct Plan {
        std::vector<Op> ops;
        double scale;
        int in_factors;
    };
    const Plan& plan(const TLDiagram& d) const;
    mutable std::unordered_map<std::uint64_t, Plan> plans_;
};

/// largest singular value by power iteration on A^T A
double operator_norm(const Eigen::MatrixXd& a, double tol = 1e-10, unsigned seed = 7);
double hs_norm(const Eigen::MatrixXd& a);
/// Kronecker product, first factor most significant
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
/// numeric rank: singular values above tol
int numeric_rank(const Eigen::MatrixXd& a, double tol = 1e-8);

/// one-line form of the structure-map relations; max deviation of each
struct StructureCheck {
    double mmstar = 0, nu_norm = 0, assoc = 0, unit = 0, frobenius = 0;
};
StructureCheck check_structure_maps(const ConcreteRep& rep);

}  // namespace tlcat
