#include "forestcalc/forest_calculus.hpp"

namespace forestcalc {

GershgorinReport gershgorin(const WeightedDigraph& g) {
  Matrix<Rational> l = kirchhoff<Rational>(g);
  GershgorinReport rep;
  Rational min_center;
  for (int i = 0; i < g.order(); ++i) {
    GershgorinDisc disc{l(i, i), l(i, i)};
    if (disc.center < 0) rep.all_in_right_half_plane = false;
    // |z - c| <= c always admits z = 0 when c >= 0.
    if (disc.center != disc.radius || disc.center < 0) rep.every_disc_touches_zero = false;
    if (i == 0 || disc.center < min_center) min_center = disc.center;
    rep.discs.push_back(disc);
    if (g.in_neighbors(i).empty()) rep.has_undominated_vertex = true;
  }
  // Every disc covers the real segment [0, 2 l_ii]; their intersection on the
  // real axis is [0, 2 min l_ii], and off-axis the discs through 0 only share
  // more when that segment is nondegenerate.
  rep.intersection_is_zero = min_center == 0;
  return rep;
}

}  // namespace forestcalc
