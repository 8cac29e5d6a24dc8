#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dechist/errors.hpp"

namespace dechist {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Hard cap on Hilbert-space dimension; everything stays brute-force
/// checkable below it.
inline constexpr int kMaxDimension = 64;

/// Numerical thresholds used throughout. structural_tol guards exact
/// identities (hermiticity, idempotence, completeness, unitarity);
/// decoherence_eps is the physics threshold below which interference
/// counts as negligible.
struct Tolerances {
  double structural_tol = 1e-10;
  double decoherence_eps = 1e-8;

  void require_valid() const {
    if (!(structural_tol > 0.0) || !(decoherence_eps > 0.0)) {
      throw structural_error("Tolerances must be positive");
    }
  }
};

/// max-abs norm, the norm every residual in this library is stated in
double max_abs(const Matrix& m);

double hermiticity_residual_of(const Matrix& m);

/// A finite-dimensional state space with labelled basis vectors.
class HilbertSpace {
 public:
  explicit HilbertSpace(int dimension);
  HilbertSpace(int dimension, std::vector<std::string> basis_labels);

  int dimension() const { return dimension_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

 private:
  int dimension_;
  std::vector<std::string> labels_;
};

/// Hermitian generator of the dynamics, in units with hbar = 1.
class Hamiltonian {
 public:
  explicit Hamiltonian(Matrix matrix, const Tolerances& tol = {});
  static Hamiltonian zero(int dimension);

  const Matrix& matrix() const { return matrix_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
};

/// Density matrix: Hermitian, positive semidefinite, unit trace.
class DensityState {
 public:
  explicit DensityState(Matrix matrix, const Tolerances& tol = {});
  static DensityState pure(const Vector& psi, const Tolerances& tol = {});

  const Matrix& matrix() const { return matrix_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }

  /// Rank-1 check and extraction of the state vector. Returns the dominant
  /// unit eigenvector if all other eigenvalues are below tol, else refuses.
  bool is_pure(const Tolerances& tol = {}) const;
  Vector pure_vector(const Tolerances& tol = {}) const;

 private:
  Matrix matrix_;
};

/// Orthogonal projector (Hermitian, idempotent) with a display label.
class Projector {
 public:
  Projector(Matrix matrix, std::string label, const Tolerances& tol = {});
  static Projector onto(const Vector& direction, std::string label);
  static Projector identity(int dimension, std::string label = "I");
  static Projector zero(int dimension, std::string label = "0");

  const Matrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
  std::string label_;
};

/// One time slot's set of alternatives {P_k}. Construction checks shape
/// only (nonempty, common dimension); completeness and exclusivity are
/// measured by validate_family, never assumed.
class ProjectionFamily {
 public:
  explicit ProjectionFamily(std::vector<Projector> members);

  std::size_t size() const { return members_.size(); }
  const Projector& member(std::size_t k) const { return members_.at(k); }
  const std::vector<Projector>& members() const { return members_; }
  int dimension() const { return members_.front().dimension(); }

  /// Family of rank-1 projectors onto the columns of a unitary.
  static ProjectionFamily from_basis(const Matrix& basis_columns,
                                     const std::vector<std::string>& labels = {});
  /// One projector per group of basis columns.
  static ProjectionFamily from_basis_groups(const Matrix& basis_columns,
                                            const std::vector<std::vector<int>>& groups,
                                            const std::vector<std::string>& labels = {});

 private:
  std::vector<Projector> members_;
};

struct FamilyReport {
  double completeness_residual = 0.0;  // || sum_k P_k - I ||_max
  double exclusivity_residual = 0.0;   // max_{j != k} || P_j P_k ||_max
  bool pass = false;
};

/// U(t) = exp(-i H t), computed by eigendecomposition of the Hermitian H.
Matrix evolution_operator(const Hamiltonian& h, double t, const Tolerances& tol = {});

/// Heisenberg-picture projector U(t)^dag P U(t).
Projector heisenberg_projector(const Projector& p, const Hamiltonian& h, double t,
                               const Tolerances& tol = {});

/// Measures whether {P_k} is exhaustive (sums to I) and exclusive
/// (pairwise products vanish). Always returns a report, never throws
/// for a shape-valid family.
FamilyReport validate_family(const ProjectionFamily& family, const Tolerances& tol = {});

}  // namespace dechist
