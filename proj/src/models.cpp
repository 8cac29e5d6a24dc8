#include "dechist/models.hpp"

namespace dechist {

namespace {

const char kQubitXZ[] = R"({
  "model": {
    "kind": "qubit",
    "hamiltonian": {"zero": true},
    "initial_state": {"ket": "0"}
  },
  "histories": {
    "times": [1.0, 2.0],
    "families": [{"basis": "x"}, {"basis": "z"}]
  },
  "analysis": {"criterion": "medium", "epsilon": 1e-6},
  "output": {"format": "json"}
}
)";

const char kQubitTrivial[] = R"({
  "model": {
    "kind": "qubit",
    "hamiltonian": {"zero": true},
    "initial_state": {"ket": "+"}
  },
  "histories": {
    "times": [1.0],
    "families": [{"projectors": [[[1, 0], [0, 1]]]}]
  },
  "analysis": {"criterion": "medium", "epsilon": 1e-8},
  "output": {"format": "json"}
}
)";

const char kLatticeHop2[] = R"({
  "model": {
    "kind": "lattice-particle",
    "sites": 2,
    "hamiltonian": {"hopping": 0.7853981633974483},
    "initial_state": {"site": 0}
  },
  "paths": {
    "slices": 1,
    "dt": 1.0,
    "partition": {"final_site": true}
  },
  "analysis": {"criterion": "medium", "epsilon": 1e-8},
  "output": {"format": "json"}
}
)";

const char kLatticeRing4[] = R"({
  "model": {
    "kind": "lattice-particle",
    "sites": 4,
    "hamiltonian": {"hopping": 1.0, "topology": "ring"},
    "initial_state": {"site": 0}
  },
  "paths": {
    "slices": 3,
    "dt": 0.4,
    "partition": {"regions": {"1": [[0, 1], [2, 3]], "3": [[0, 1], [2, 3]]}}
  },
  "analysis": {"criterion": "medium", "epsilon": 1e-8},
  "output": {"format": "json"}
}
)";

}  // namespace

const std::vector<ModelPreset>& model_zoo() {
  static const std::vector<ModelPreset> zoo = {
      {"qubit-xz",
       "Qubit in |0>, x alternatives then z alternatives: maximal interference, "
       "not decoherent at the fine-grained level",
       false, kQubitXZ},
      {"qubit-trivial", "Qubit with the one-member family {I}: D = [[1]]", true, kQubitTrivial},
      {"lattice-hop-2",
       "Two-site balanced hop, one step, partitioned by final site: D = diag(1/2, 1/2)", true,
       kLatticeHop2},
      {"lattice-ring-4",
       "Four-site hopping ring, three steps, half-ring regions at slices 1 and 3", false,
       kLatticeRing4},
  };
  return zoo;
}

const ModelPreset* find_preset(const std::string& name) {
  for (const auto& preset : model_zoo()) {
    if (preset.name == name) return &preset;
  }
  return nullptr;
}

}  // namespace dechist
