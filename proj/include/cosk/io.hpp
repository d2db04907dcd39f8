// JSON file formats: tensors, spectra, and reports.
//
// Tensor files list a generating set of components,
//   { "n": 4, "components": [[i, j, k, l, value], ...] },
// which the loader completes under the pair antisymmetries and pair exchange.
#pragma once

#include "cosk/bochner.hpp"
#include "cosk/extremal.hpp"
#include "cosk/second_kind.hpp"
#include "cosk/tensor.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>

namespace cosk {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Completes the generating set by symmetry.  Throws ParseError on malformed
/// input or on duplicates that disagree by more than `dup_tol`.
Tensor4d tensor_from_json(const nlohmann::json& j, double dup_tol = 1e-12);
Tensor4d load_tensor(const std::filesystem::path& path, double dup_tol = 1e-12);

/// Canonical generating set: i < j, k < l, (i, j) ≤ (k, l) lexicographically.
nlohmann::json tensor_to_json(const CurvatureTensord& r);

nlohmann::json to_json(const Spectrumd& s);
nlohmann::json to_json(const ConeVerdict& v);
nlohmann::json to_json(const BochnerReport& r);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const ExtremalReport& r);

}  // namespace cosk
