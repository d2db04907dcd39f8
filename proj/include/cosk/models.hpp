// Built-in curvature models.
#pragma once

#include "cosk/tensor.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace cosk {

/// R = ½ g⊠g + ε W with W from random_weyl(n, seed).
CurvatureTensord near_sphere(int n, std::uint64_t seed, double epsilon);

/// Complex projective space with holomorphic sectional curvature 4, real dimension n (even):
/// R_ijkl = g_ik g_jl - g_il g_jk + J_ik J_jl - J_il J_jk + 2 J_ij J_kl.
CurvatureTensord fubini_study(int n);

/// The standard complex structure: J e_{2a} = e_{2a+1}.
Eigen::MatrixXd complex_structure(int n);

struct ModelSpec {
  std::string name;  // sphere | flat | near_sphere | fubini_study
  int n = 4;
  std::uint64_t seed = 0;
  double epsilon = 0.05;
};

/// Throws std::invalid_argument for an unknown model name or unsupported n.
CurvatureTensord make_model(const ModelSpec& spec);

bool is_model_name(std::string_view name);

}  // namespace cosk
