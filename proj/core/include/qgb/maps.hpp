#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgb/catalog.hpp"
#include "qgb/report.hpp"

namespace qgb {

enum class InvariantKind { Diff, Sum, Ratio, Product, RecipDiff, RecipSum };

/// One-parameter groups acting on vertex values. The Alt variants act with
/// opposite orientation on the two sublattices (u00, u11 even).
enum class FlowKind { Shift, AltShift, Scale, AltScale, Square, AltSquare };

/// Change of edge variables taking a derived map to its canonical form:
/// ScaleByParam is X -> a X, Negate is X -> -X.
enum class Normalization { Identity, ScaleByParam, Negate };

std::string to_string(InvariantKind kind);
std::string to_string(FlowKind flow);
std::string to_string(Normalization n);

struct InvariantMap {
  std::string family;
  std::string characteristic;  // "eta1", "eta2", "eta3"
  FlowKind flow = FlowKind::Shift;
  InvariantKind kind = InvariantKind::Diff;
  std::string yb_family;
  Normalization normalization = Normalization::Identity;

  std::string id() const { return family + "/" + characteristic; }
  Scalar operator()(const Scalar& s, const Scalar& t) const;
  /// t with I(s, t) = X.
  Scalar solve_t(const Scalar& s, const Scalar& X) const;
  /// G_eps on a vertex value; for scalings eps is the (nonzero) factor.
  Scalar act(const Scalar& u, const Scalar& eps, bool even) const;
};

const std::vector<InvariantMap>& invariant_table();
const InvariantMap& invariant(std::string_view family, std::string_view characteristic);

/// I constant along the flow on both edge orientations, and the flow maps
/// solutions of Q to solutions.
CheckResult invariant_check(const InvariantMap& inv, int samples, std::uint64_t seed);

using EdgePair = std::pair<Scalar, Scalar>;
using EdgeMapFn =
    std::function<EdgePair(const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b)>;

struct YangBaxterMap {
  std::string source;
  std::string yb_family;
  Normalization normalization = Normalization::Identity;
  EdgeMapFn map;

  EdgePair operator()(const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b) const {
    return map(X, Y, a, b);
  }
  /// The map in the canonical variables of its family.
  YangBaxterMap canonical() const;
  /// Negative control: U shifted by `delta`.
  YangBaxterMap perturbed(const Scalar& delta) const;
};

YangBaxterMap identity_map();

/// (U, V) from (X, Y) through the vertex variables of one quad, gauge u00
/// fixed. Throws DerivationError when the result depends on the gauge.
YangBaxterMap yb_map_derive(const InvariantMap& inv);

/// R12 R13 R23 = R23 R13 R12 on random triples, exact.
CheckResult ybe_check(const YangBaxterMap& map, int samples, std::uint64_t seed);

/// Birationality of the map and its companions at sampled points: X -> U
/// (Y fixed) and Y -> V (X fixed) are invertible Moebius maps, and so are
/// X -> U along V = const and Y -> V along U = const.
CheckResult quadrirational_check(const YangBaxterMap& map, int samples, std::uint64_t seed);

using ReflectionFn = std::function<Scalar(const Scalar& X, const Scalar& a, const Scalar& mu)>;
using ParamMapFn = std::function<Scalar(const Scalar& a, const Scalar& mu)>;

/// (V, sigma(a)) = (h_a(X), sigma(a)), h given in canonical coordinates.
struct ReflectionMap {
  std::string source;
  ReflectionFn h;
  ParamMapFn sigma;
};

/// q(x,y,z;a) = I(y,z) - h_a(I(y,x)) with h pulled back through the
/// normalization of `inv`. Moebius in x and z; no folding function.
BoundaryEquation prescription_q(const InvariantMap& inv, const ReflectionMap& refl, const Scalar& mu);

/// A reflection map together with the catalogued row it should reproduce
/// (with mu replaced by mu_sign * mu).
struct ReflectionEntry {
  std::string invariant;  // InvariantMap::id()
  ReflectionMap refl;
  std::string row;
  int mu_sign = 1;
};

const std::vector<ReflectionEntry>& reflection_table();

/// z solving the prescription equals z solving the catalogued row.
CheckResult prescription_locus_check(const ReflectionEntry& entry, int samples, std::uint64_t seed);

/// Invariants, YBE, quadrirationality, and the prescription route.
std::vector<CheckResult> maps_suite(int samples, std::uint64_t seed, std::string_view family = {});

}  // namespace qgb
