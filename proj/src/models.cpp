#include "cosk/models.hpp"

#include <array>
#include <stdexcept>

namespace cosk {

CurvatureTensord near_sphere(int n, std::uint64_t seed, double epsilon) {
  return sphere_tensor<double>(n) + epsilon * random_weyl<double>(n, seed);
}

Eigen::MatrixXd complex_structure(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("complex structure requires even n >= 2");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a + 1 < n; a += 2) {
    j(a + 1, a) = 1.0;
    j(a, a + 1) = -1.0;
  }
  return j;
}

CurvatureTensord fubini_study(int n) {
  const Eigen::MatrixXd j = complex_structure(n);
  Tensor4d t(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double g = (a == c) * (b == d) - (a == d) * (b == c);
          t(a, b, c, d) = g + j(a, c) * j(b, d) - j(a, d) * j(b, c) + 2.0 * j(a, b) * j(c, d);
        }
  return CurvatureTensord::from_table(t);
}

bool is_model_name(std::string_view name) {
  constexpr std::array<std::string_view, 4> names{"sphere", "flat", "near_sphere", "fubini_study"};
  for (auto m : names)
    if (m == name) return true;
  return false;
}

CurvatureTensord make_model(const ModelSpec& spec) {
  if (spec.name == "sphere") return sphere_tensor<double>(spec.n);
  if (spec.name == "flat") return CurvatureTensord::zero(spec.n);
  if (spec.name == "near_sphere") return near_sphere(spec.n, spec.seed, spec.epsilon);
  if (spec.name == "fubini_study") return fubini_study(spec.n);
  throw std::invalid_argument("unknown model '" + spec.name + "' (expected sphere, flat, near_sphere, fubini_study)");
}

}  // namespace cosk
