#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>

#include "spinflip/bcs.hpp"
#include "spinflip/materials.hpp"
#include "spinflip/quadrature.hpp"

namespace spinflip {

// Conductivity models selectable from a config. Superconducting models all
// switch to sigma2 = 0 at and above Tc.
struct TwoFluidGC {
  SuperconductorParams params;
};
struct AGTwoFluid {
  SuperconductorParams params;
};
struct MattisBardeenClean {
  SuperconductorParams params;
};
struct DirtyBCS {
  SuperconductorParams params;
};
struct DrudeBG {
  DrudeMetalParams params;
};
struct FixedConductivity {
  ComplexConductivity sigma;
};

using MaterialModel = std::variant<TwoFluidGC, AGTwoFluid, MattisBardeenClean, DirtyBCS, DrudeBG, FixedConductivity>;

/// Config name of the model: two_fluid, ag_two_fluid, mb_clean, dirty_bcs,
/// drude_bg, fixed.
std::string model_name(const MaterialModel& m);

/// Superconductor parameters of the model, or nullptr for normal metals.
const SuperconductorParams* superconductor_params(const MaterialModel& m);

struct MaterialResponse {
  ComplexConductivity sigma;
  std::complex<double> eps;
};

/// Evaluates a MaterialModel at (T, omega). Models that need Delta(T) share
/// one GapCurve built at construction; the object is immutable afterwards
/// and safe to share between threads.
class Material {
 public:
  explicit Material(MaterialModel model, QuadratureSettings settings = {});

  const MaterialModel& model() const noexcept { return model_; }
  MaterialResponse response(double temperature, double omega) const;
  ComplexConductivity conductivity(double temperature, double omega) const;
  /// Delta(T) from the cached curve; 0 for normal metals.
  double gap(double temperature) const;

 private:
  MaterialModel model_;
  QuadratureSettings settings_;
  std::shared_ptr<const GapCurve> curve_;
};

}  // namespace spinflip
