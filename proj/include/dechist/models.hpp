#pragma once

#include <string>
#include <vector>

namespace dechist {

/// A bundled, ready-to-run config. The checked-in files under presets/
/// carry the same bytes; a test keeps them in sync.
struct ModelPreset {
  std::string name;
  std::string description;
  bool expected_decoherent;  // verdict under the bundled analysis
  std::string config_text;
};

const std::vector<ModelPreset>& model_zoo();

/// nullptr when no preset has that name.
const ModelPreset* find_preset(const std::string& name);

}  // namespace dechist
