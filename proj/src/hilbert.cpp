#include "dechist/hilbert.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace dechist {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double hermiticity_residual_of(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream os;
    os << what << " must be a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    throw dimension_error(os.str());
  }
  if (m.rows() > kMaxDimension) {
    std::ostringstream os;
    os << what << " dimension " << m.rows() << " exceeds the cap of " << kMaxDimension;
    throw dimension_error(os.str());
  }
}

void require_hermitian(const Matrix& m, double tol, const char* what) {
  const double residual = hermiticity_residual_of(m);
  if (residual > tol) {
    std::ostringstream os;
    os << what << " is not Hermitian: max asymmetry residual " << residual
       << " exceeds tolerance " << tol;
    throw structural_error(os.str());
  }
}

}  // namespace

HilbertSpace::HilbertSpace(int dimension) : dimension_(dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    std::ostringstream os;
    os << "HilbertSpace dimension must be in [1, " << kMaxDimension << "], got " << dimension;
    throw dimension_error(os.str());
  }
  labels_.reserve(static_cast<std::size_t>(dimension));
  for (int k = 0; k < dimension; ++k) labels_.push_back(std::to_string(k));
}

HilbertSpace::HilbertSpace(int dimension, std::vector<std::string> basis_labels)
    : HilbertSpace(dimension) {
  if (static_cast<int>(basis_labels.size()) != dimension) {
    throw dimension_error("basis label count must equal the dimension");
  }
  std::set<std::string> seen(basis_labels.begin(), basis_labels.end());
  if (static_cast<int>(seen.size()) != dimension) {
    throw structural_error("basis labels must be unique");
  }
  labels_ = std::move(basis_labels);
}

Hamiltonian::Hamiltonian(Matrix matrix, const Tolerances& tol) : matrix_(std::move(matrix)) {
  tol.require_valid();
  require_square(matrix_, "Hamiltonian");
  require_hermitian(matrix_, tol.structural_tol, "Hamiltonian");
}

Hamiltonian Hamiltonian::zero(int dimension) {
  return Hamiltonian(Matrix::Zero(dimension, dimension));
}

DensityState::DensityState(Matrix matrix, const Tolerances& tol) : matrix_(std::move(matrix)) {
  tol.require_valid();
  require_square(matrix_, "DensityState");
  require_hermitian(matrix_, tol.structural_tol, "DensityState");
  const double trace_residual = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (trace_residual > tol.structural_tol) {
    std::ostringstream os;
    os << "DensityState trace differs from 1 by " << trace_residual;
    throw structural_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.structural_tol) {
    std::ostringstream os;
    os << "DensityState has negative eigenvalue " << min_eig;
    throw structural_error(os.str());
  }
}

DensityState DensityState::pure(const Vector& psi, const Tolerances& tol) {
  const double n = psi.norm();
  if (n <= 0.0) throw structural_error("cannot build a pure state from the zero vector");
  const Vector unit = psi / n;
  return DensityState(unit * unit.adjoint(), tol);
}

bool DensityState::is_pure(const Tolerances& tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  const auto& vals = es.eigenvalues();
  double subdominant = 0.0;
  for (int i = 0; i + 1 < vals.size(); ++i) subdominant = std::max(subdominant, std::abs(vals(i)));
  return subdominant <= tol.structural_tol;
}

Vector DensityState::pure_vector(const Tolerances& tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_);
  const auto& vals = es.eigenvalues();
  double subdominant = 0.0;
  for (int i = 0; i + 1 < vals.size(); ++i) subdominant = std::max(subdominant, std::abs(vals(i)));
  if (subdominant > tol.structural_tol) {
    std::ostringstream os;
    os << "state is not pure: subdominant eigenvalue " << subdominant;
    throw unsupported_state_error(os.str());
  }
  return es.eigenvectors().col(vals.size() - 1);
}

Projector::Projector(Matrix matrix, std::string label, const Tolerances& tol)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  tol.require_valid();
  require_square(matrix_, "Projector");
  require_hermitian(matrix_, tol.structural_tol, "Projector");
  const double idem = max_abs(matrix_ * matrix_ - matrix_);
  if (idem > tol.structural_tol) {
    std::ostringstream os;
    os << "Projector '" << label_ << "' is not idempotent: ||P^2 - P||_max = " << idem;
    throw structural_error(os.str());
  }
}

Projector Projector::onto(const Vector& direction, std::string label) {
  const double n = direction.norm();
  if (n <= 0.0) throw structural_error("cannot project onto the zero vector");
  const Vector unit = direction / n;
  return Projector(unit * unit.adjoint(), std::move(label));
}

Projector Projector::identity(int dimension, std::string label) {
  return Projector(Matrix::Identity(dimension, dimension), std::move(label));
}

Projector Projector::zero(int dimension, std::string label) {
  return Projector(Matrix::Zero(dimension, dimension), std::move(label));
}

ProjectionFamily::ProjectionFamily(std::vector<Projector> members) : members_(std::move(members)) {
  if (members_.empty()) throw dimension_error("ProjectionFamily must have at least one member");
  const int dim = members_.front().dimension();
  for (const auto& p : members_) {
    if (p.dimension() != dim) {
      throw dimension_error("ProjectionFamily members must share one dimension");
    }
  }
}

ProjectionFamily ProjectionFamily::from_basis(const Matrix& basis_columns,
                                              const std::vector<std::string>& labels) {
  std::vector<std::vector<int>> groups;
  groups.reserve(static_cast<std::size_t>(basis_columns.cols()));
  for (int k = 0; k < basis_columns.cols(); ++k) groups.push_back({k});
  return from_basis_groups(basis_columns, groups, labels);
}

ProjectionFamily ProjectionFamily::from_basis_groups(const Matrix& basis_columns,
                                                     const std::vector<std::vector<int>>& groups,
                                                     const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != groups.size()) {
    throw dimension_error("label count must match group count");
  }
  std::vector<Projector> members;
  members.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    Matrix p = Matrix::Zero(basis_columns.rows(), basis_columns.rows());
    for (int col : groups[g]) {
      if (col < 0 || col >= basis_columns.cols()) {
        throw index_error("basis column index out of range");
      }
      const Vector v = basis_columns.col(col);
      p += v * v.adjoint();
    }
    std::string label = labels.empty() ? "P" + std::to_string(g) : labels[g];
    members.emplace_back(std::move(p), std::move(label));
  }
  return ProjectionFamily(std::move(members));
}

Matrix evolution_operator(const Hamiltonian& h, double t, const Tolerances& tol) {
  tol.require_valid();
  if (!std::isfinite(t)) throw structural_error("evolution time must be finite");
  // hermiticity is judged against the caller's tolerance, not the ctor's
  require_hermitian(h.matrix(), tol.structural_tol, "Hamiltonian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  const auto& evals = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  Vector phases(evals.size());
  for (int k = 0; k < evals.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -evals(k) * t));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

Projector heisenberg_projector(const Projector& p, const Hamiltonian& h, double t,
                               const Tolerances& tol) {
  if (p.dimension() != h.dimension()) {
    std::ostringstream os;
    os << "projector dimension " << p.dimension() << " does not match Hamiltonian dimension "
       << h.dimension();
    throw dimension_error(os.str());
  }
  const Matrix u = evolution_operator(h, t, tol);
  return Projector(u.adjoint() * p.matrix() * u, p.label(), tol);
}

FamilyReport validate_family(const ProjectionFamily& family, const Tolerances& tol) {
  tol.require_valid();
  const int dim = family.dimension();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& p : family.members()) sum += p.matrix();
  FamilyReport report;
  report.completeness_residual = max_abs(sum - Matrix::Identity(dim, dim));
  for (std::size_t j = 0; j < family.size(); ++j) {
    for (std::size_t k = 0; k < family.size(); ++k) {
      if (j == k) continue;
      report.exclusivity_residual = std::max(
          report.exclusivity_residual, max_abs(family.member(j).matrix() * family.member(k).matrix()));
    }
  }
  report.pass = report.completeness_residual <= tol.structural_tol &&
                report.exclusivity_residual <= tol.structural_tol;
  return report;
}

}  // namespace dechist
