#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dechist/models.hpp"
#include "dechist/report.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace dechist;

namespace {

py::dict verdict_probabilities(const DecoherenceVerdict& v) {
  py::dict out;
  if (v.probabilities) {
    for (std::size_t a = 0; a < v.labels.size(); ++a) {
      out[py::str(v.labels[a])] = (*v.probabilities)[a];
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "decoherent-histories workbench: decoherence functionals over "
            "finite-dimensional history grids and lattice path sums";

  py::register_exception<error>(m, "DechistError", PyExc_RuntimeError);

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("structural_tol", &Tolerances::structural_tol)
      .def_readwrite("decoherence_eps", &Tolerances::decoherence_eps);

  py::class_<HilbertSpace>(m, "HilbertSpace")
      .def(py::init<int>(), "dimension"_a)
      .def(py::init<int, std::vector<std::string>>(), "dimension"_a, "basis_labels"_a)
      .def_property_readonly("dimension", &HilbertSpace::dimension)
      .def_property_readonly("basis_labels", &HilbertSpace::basis_labels);

  py::class_<Hamiltonian>(m, "Hamiltonian")
      .def(py::init<Matrix>(), "matrix"_a)
      .def_static("zero", &Hamiltonian::zero, "dimension"_a)
      .def_property_readonly("matrix", &Hamiltonian::matrix)
      .def_property_readonly("dimension", &Hamiltonian::dimension);

  py::class_<DensityState>(m, "DensityState")
      .def(py::init<Matrix>(), "matrix"_a)
      .def_static("pure", [](const Vector& psi) { return DensityState::pure(psi); }, "psi"_a)
      .def_property_readonly("matrix", &DensityState::matrix)
      .def_property_readonly("dimension", &DensityState::dimension);

  py::class_<Projector>(m, "Projector")
      .def(py::init<Matrix, std::string>(), "matrix"_a, "label"_a)
      .def_static("onto", &Projector::onto, "direction"_a, "label"_a)
      .def_static("identity", &Projector::identity, "dimension"_a, "label"_a = "I")
      .def_property_readonly("matrix", &Projector::matrix)
      .def_property_readonly("label", &Projector::label);

  py::class_<ProjectionFamily>(m, "ProjectionFamily")
      .def(py::init<std::vector<Projector>>(), "members"_a)
      .def_static("from_basis",
                  [](const Matrix& basis) { return ProjectionFamily::from_basis(basis); },
                  "basis_columns"_a)
      .def("__len__", &ProjectionFamily::size)
      .def("member", &ProjectionFamily::member, "k"_a);

  py::class_<FamilyReport>(m, "FamilyReport")
      .def_readonly("completeness_residual", &FamilyReport::completeness_residual)
      .def_readonly("exclusivity_residual", &FamilyReport::exclusivity_residual)
      .def_readonly("passed", &FamilyReport::pass);

  py::class_<HistoryIndex>(m, "HistoryIndex")
      .def(py::init([](std::vector<int> alphas) { return HistoryIndex{std::move(alphas)}; }),
           "alphas"_a)
      .def_readonly("alphas", &HistoryIndex::alphas)
      .def("label", &HistoryIndex::to_label)
      .def("__repr__", &HistoryIndex::to_label);

  py::class_<HistoryGrid>(m, "HistoryGrid")
      .def(py::init<std::vector<double>, std::vector<ProjectionFamily>, Hamiltonian,
                    DensityState>(),
           "times"_a, "families"_a, "hamiltonian"_a, "state"_a)
      .def_property_readonly("dimension", &HistoryGrid::dimension)
      .def_property_readonly("times", &HistoryGrid::times)
      .def("history_count", &HistoryGrid::history_count);

  py::class_<CoarseGrainingMap>(m, "CoarseGrainingMap")
      .def_static("from_labels", &CoarseGrainingMap::from_labels, "domain"_a, "assigned"_a)
      .def_static("identity",
                  [](const HistoryGrid& g) { return CoarseGrainingMap::identity(g); }, "grid"_a)
      .def_static("all_to_one",
                  [](const HistoryGrid& g, const std::string& label) {
                    return CoarseGrainingMap::all_to_one(g, label);
                  },
                  "grid"_a, "label"_a = "all")
      .def_static("by_slot", &CoarseGrainingMap::by_slot, "grid"_a, "slot"_a)
      .def_property_readonly("domain", &CoarseGrainingMap::domain)
      .def_property_readonly("cell_labels", &CoarseGrainingMap::cell_labels);

  py::enum_<Provenance>(m, "Provenance")
      .value("operator_form", Provenance::operator_form)
      .value("path_sum", Provenance::path_sum);

  py::enum_<Criterion>(m, "Criterion")
      .value("medium", Criterion::medium)
      .value("weak", Criterion::weak)
      .value("linear_positivity", Criterion::linear_positivity);

  py::class_<DecoherenceMatrix>(m, "DecoherenceMatrix")
      .def(py::init<Matrix, std::vector<std::string>, Provenance>(), "entries"_a, "labels"_a,
           "provenance"_a = Provenance::operator_form)
      .def_property_readonly("entries", &DecoherenceMatrix::entries)
      .def_property_readonly("labels", &DecoherenceMatrix::labels)
      .def_property_readonly("provenance", &DecoherenceMatrix::provenance)
      .def("__len__", &DecoherenceMatrix::size);

  py::class_<AxiomReport>(m, "AxiomReport")
      .def_readonly("hermiticity_residual", &AxiomReport::hermiticity_residual)
      .def_readonly("normalization_residual", &AxiomReport::normalization_residual)
      .def_readonly("positivity_min_diagonal", &AxiomReport::positivity_min_diagonal)
      .def_readonly("superposition_residual", &AxiomReport::superposition_residual)
      .def_readonly("passed", &AxiomReport::pass);

  py::class_<DecoherenceVerdict>(m, "DecoherenceVerdict")
      .def_readonly("criterion", &DecoherenceVerdict::criterion)
      .def_readonly("epsilon", &DecoherenceVerdict::epsilon)
      .def_readonly("max_violation", &DecoherenceVerdict::max_violation)
      .def_readonly("decoherent", &DecoherenceVerdict::decoherent)
      .def_readonly("labels", &DecoherenceVerdict::labels)
      .def_property_readonly("probabilities", &verdict_probabilities);

  py::class_<BranchRecordsResult>(m, "BranchRecordsResult")
      .def_property_readonly("records",
                             [](const BranchRecordsResult& r) {
                               return r.records ? py::cast(*r.records) : py::none().cast<py::object>();
                             })
      .def_readonly("max_overlap", &BranchRecordsResult::max_overlap)
      .def_readonly("labels", &BranchRecordsResult::labels);

  py::class_<LatticeModel>(m, "LatticeModel")
      .def(py::init<Hamiltonian, int, double, DensityState>(), "hamiltonian"_a, "slice_count"_a,
           "dt"_a, "initial_state"_a)
      .def_property_readonly("sites", &LatticeModel::sites)
      .def_property_readonly("slice_count", &LatticeModel::slice_count)
      .def_property_readonly("dt", &LatticeModel::dt)
      .def_property_readonly("propagator", &LatticeModel::propagator);

  py::class_<FinePath>(m, "FinePath")
      .def(py::init([](std::vector<int> sites) { return FinePath{std::move(sites)}; }),
           "sites_at_slices"_a)
      .def_readonly("sites_at_slices", &FinePath::sites_at_slices);

  py::class_<PathPartition>(m, "PathPartition")
      .def_property_readonly("labels", &PathPartition::labels)
      .def("class_of", &PathPartition::class_of, "path_rank"_a)
      .def("__len__", &PathPartition::class_count);

  // operations
  m.def("evolution_operator",
        [](const Hamiltonian& h, double t) { return evolution_operator(h, t); }, "hamiltonian"_a,
        "t"_a);
  m.def("heisenberg_projector",
        [](const Projector& p, const Hamiltonian& h, double t) {
          return heisenberg_projector(p, h, t);
        },
        "projector"_a, "hamiltonian"_a, "t"_a);
  m.def("validate_family",
        [](const ProjectionFamily& f) { return validate_family(f); }, "family"_a);
  m.def("enumerate_histories", &enumerate_histories, "grid"_a);
  m.def("class_operator", &class_operator, "grid"_a, "index"_a);
  m.def("completeness_check", &completeness_check, "grid"_a);
  m.def("coarse_grain_operators",
        [](const HistoryGrid& g, const CoarseGrainingMap& map) {
          const CoarseOperators ops = coarse_grain_operators(g, map);
          py::dict out;
          for (std::size_t i = 0; i < ops.labels.size(); ++i) {
            out[py::str(ops.labels[i])] = ops.operators[i];
          }
          return out;
        },
        "grid"_a, "map"_a);
  m.def("build_decoherence_functional", &build_decoherence_functional, "grid"_a);
  m.def("check_axioms",
        [](const DecoherenceMatrix& d) { return check_axioms(d); }, "matrix"_a);
  m.def("check_axioms_on_grid",
        [](const DecoherenceMatrix& d, const HistoryGrid& g) { return check_axioms(d, g); },
        "matrix"_a, "grid"_a);
  m.def("coarse_grain_D", &coarse_grain_D, "matrix"_a, "map"_a);
  m.def("decide",
        [](const DecoherenceMatrix& d, Criterion c, double eps) { return decide(d, c, eps); },
        "matrix"_a, "criterion"_a, "epsilon"_a);
  m.def("linear_positivity_probs",
        [](const HistoryGrid& g, double eps) { return linear_positivity_probs(g, eps); },
        "grid"_a, "epsilon"_a = 1e-8);
  m.def("branch_records",
        [](const HistoryGrid& g, double eps) { return branch_records(g, eps); }, "grid"_a,
        "epsilon"_a = 1e-8);
  m.def("path_amplitude", &path_amplitude, "model"_a, "path"_a);
  m.def("enumerate_paths", &enumerate_paths, "model"_a);
  m.def("region_partition",
        [](const LatticeModel& model, const std::map<int, std::vector<std::vector<int>>>& r) {
          return region_partition(model, r);
        },
        "model"_a, "region_sets"_a);
  m.def("predicate_partition",
        [](const LatticeModel& model, const std::function<std::string(const FinePath&)>& f) {
          return predicate_partition(model, f);
        },
        "model"_a, "labeler"_a);
  m.def("build_D_pathsum", &build_D_pathsum, "model"_a, "partition"_a);
  m.def("operator_equivalence_oracle",
        [](const LatticeModel& model, const std::map<int, std::vector<std::vector<int>>>& r) {
          return operator_equivalence_oracle(model, r);
        },
        "model"_a, "region_sets"_a);

  // config-driven pipeline on JSON strings
  m.def("validate_config_text", &validate_config, "text"_a);
  m.def("run_analysis_text",
        [](const std::string& text) {
          const AnalysisReport report = run_analysis(load_config(text));
          return report.to_json_text();
        },
        "text"_a,
        "Run a JSON config end to end and return the JSON report text.");
  m.def("model_zoo", []() {
    py::dict out;
    for (const auto& preset : model_zoo()) out[py::str(preset.name)] = preset.config_text;
    return out;
  });

  m.attr("__version__") = "0.1.0";
}
