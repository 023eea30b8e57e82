#pragma once

#include <vector>

#include "brannulus/lifting.hpp"
#include "brannulus/permutation.hpp"

namespace brannulus {

struct MonodromyRep {
  /// generators[v] acts on root ids for critical value v (index into critical_values).
  std::vector<Permutation> generators;
  /// Critical value ids sorted by argument, then modulus.
  std::vector<int> generator_order;
  /// Generators applied in generator_order, first one first.
  Permutation product;
  std::vector<int> product_cycle_type;
  /// Non-fixed orbit sizes of each generator match {m(b)+1} over its critical points.
  bool orbit_sizes_ok = false;
  bool transitive = false;
};

/// Basepoint at half the smallest critical-value modulus on the ray of c,
/// out to c, once around it counterclockwise, and back. Critical values near
/// the ray are passed on the counterclockwise side. Throws UnroutablePath.
ImagePath loop_for_critical_value(const LiftContext& ctx, int value_id);

/// Basepoint of the loop for value_id.
Complex loop_basepoint(const LiftContext& ctx, int value_id);

/// Root j is sent to the root whose strand the lifted loop ends on.
/// Throws EndpointMatchAmbiguous.
Permutation monodromy_generator(const LiftContext& ctx, int value_id);

/// Throws TransitivityFailure.
MonodromyRep monodromy_representation(const LiftContext& ctx);

/// Lift of a circle enclosing every critical value, started on a regular
/// argument; a d-cycle for every valid polynomial.
Permutation infinity_loop_permutation(const LiftContext& ctx);

bool is_transitive(int n, const std::vector<Permutation>& generators);

}  // namespace brannulus
