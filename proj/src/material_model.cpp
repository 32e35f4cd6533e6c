#include "spinflip/material_model.hpp"

#include <type_traits>

#include "spinflip/errors.hpp"
#include "spinflip/units.hpp"

namespace spinflip {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string model_name(const MaterialModel& m) {
  return std::visit(overloaded{
                        [](const TwoFluidGC&) { return std::string("two_fluid"); },
                        [](const AGTwoFluid&) { return std::string("ag_two_fluid"); },
                        [](const MattisBardeenClean&) { return std::string("mb_clean"); },
                        [](const DirtyBCS&) { return std::string("dirty_bcs"); },
                        [](const DrudeBG&) { return std::string("drude_bg"); },
                        [](const FixedConductivity&) { return std::string("fixed"); },
                    },
                    m);
}

const SuperconductorParams* superconductor_params(const MaterialModel& m) {
  return std::visit(
      [](const auto& v) -> const SuperconductorParams* {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DrudeBG> || std::is_same_v<T, FixedConductivity>) {
          return nullptr;
        } else {
          return &v.params;
        }
      },
      m);
}

Material::Material(MaterialModel model, QuadratureSettings settings)
    : model_(std::move(model)), settings_(settings) {
  settings_.validate();
  std::visit(overloaded{
                 [](const DrudeBG& d) { d.params.validate(); },
                 [](const FixedConductivity& f) {
                   if (!(std::isfinite(f.sigma.sigma1) && std::isfinite(f.sigma.sigma2) && f.sigma.sigma1 >= 0.0))
                     throw DomainError("fixed conductivity needs finite sigma with sigma1 >= 0");
                 },
                 [](const auto& sc) { sc.params.validate(); },
             },
             model_);
  const bool needs_gap = std::holds_alternative<AGTwoFluid>(model_) ||
                         std::holds_alternative<MattisBardeenClean>(model_) ||
                         std::holds_alternative<DirtyBCS>(model_);
  if (needs_gap) curve_ = std::make_shared<const GapCurve>(*superconductor_params(model_), settings_);
}

double Material::gap(double temperature) const { return curve_ ? (*curve_)(temperature) : 0.0; }

ComplexConductivity Material::conductivity(double temperature, double omega) const {
  if (!(std::isfinite(temperature) && temperature >= 0.0)) throw DomainError("temperature must be non-negative");
  return std::visit(
      overloaded{
          [&](const TwoFluidGC& m) { return two_fluid_conductivity(temperature, m.params, omega); },
          [&](const AGTwoFluid& m) {
            return ag_two_fluid_conductivity(temperature, gap(temperature), m.params, omega);
          },
          [&](const MattisBardeenClean& m) {
            if (temperature >= m.params.tc) return ComplexConductivity{m.params.sigma_n, 0.0};
            const auto s = mb_clean_conductivity(omega, temperature, gap(temperature), m.params, settings_);
            return ComplexConductivity{m.params.sigma_n * s.real(), m.params.sigma_n * s.imag()};
          },
          [&](const DirtyBCS& m) {
            const double sigma_l = london_conductivity(m.params, omega);
            const auto s = dirty_conductivity(omega, temperature, gap(temperature), m.params, settings_);
            if (temperature >= m.params.tc) return ComplexConductivity{sigma_l * s.real(), 0.0};
            return ComplexConductivity{sigma_l * s.real(), sigma_l * s.imag()};
          },
          [&](const DrudeBG& m) {
            return conductivity_from_permittivity(drude_bg_permittivity(temperature, omega, m.params, settings_),
                                                  omega);
          },
          [&](const FixedConductivity& m) { return m.sigma; },
      },
      model_);
}

MaterialResponse Material::response(double temperature, double omega) const {
  if (const auto* d = std::get_if<DrudeBG>(&model_)) {
    const auto eps = drude_bg_permittivity(temperature, omega, d->params, settings_);
    return {conductivity_from_permittivity(eps, omega), eps};
  }
  const auto sigma = conductivity(temperature, omega);
  return {sigma, permittivity(sigma, omega)};
}

}  // namespace spinflip
