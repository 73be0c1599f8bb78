#include "bgkpml/time_integrator.hpp"

namespace bgkpml {

double cfl_dt(const GridSpec& grid, const ModelConstants& consts,
              double safety) {
  consts.validate();
  if (!(safety > 0))
    throw std::invalid_argument("cfl_dt: safety must be > 0");
  return safety * grid.hx() / (2.0 * std::sqrt(3.0 * consts.RT));
}

}  // namespace bgkpml
