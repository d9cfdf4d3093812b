#pragma once

#include "maskgrid/statespace.hpp"

namespace testhelp {

// anchor used across the 3-dim family tests
inline maskgrid::HyperAngles anchor3() {
  maskgrid::HyperAngles h;
  h.x = {maskgrid::pi / 4.0, maskgrid::pi / 6.0};
  h.y = {2.0 * maskgrid::pi / 3.0, maskgrid::pi / 4.0};
  return h;
}

}  // namespace testhelp
