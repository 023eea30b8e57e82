#include <doctest.h>

#include "brannulus/permutation.hpp"

using namespace brannulus;

TEST_CASE("composition applies the right factor first") {
  const Permutation f = from_cycles(3, {{0, 1}});
  const Permutation g = from_cycles(3, {{1, 2}});
  const Permutation fg = compose(f, g);
  // g sends 1 to 2, then f fixes 2.
  CHECK(fg[1] == 2);
  CHECK(fg[2] == 0);
  CHECK(fg[0] == 1);
  CHECK(cycle_string(fg) == "(1,2,3)");
}

TEST_CASE("cycles and cycle type") {
  const Permutation p = {3, 2, 1, 4, 0, 5};
  const auto cs = cycles(p);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == std::vector<int>{0, 3, 4});
  CHECK(cs[1] == std::vector<int>{1, 2});
  CHECK(cycle_type(p) == std::vector<int>{3, 2, 1});
  CHECK(cycles(p, true).size() == 3);
  CHECK(cycle_string(p) == "(1,4,5)(2,3)");
  CHECK(cycle_string(identity_permutation(4)) == "()");
}

TEST_CASE("inverse, identity, long cycle") {
  const Permutation p = {2, 0, 3, 1};
  CHECK(is_permutation(p));
  CHECK_FALSE(is_permutation({0, 0, 1}));
  CHECK(is_identity(compose(p, inverse(p))));
  CHECK(is_identity(compose(inverse(p), p)));
  CHECK(cycle_string(long_cycle(5)) == "(1,2,3,4,5)");
  CHECK(cycle_type(long_cycle(7)) == std::vector<int>{7});
}

TEST_CASE("worked factorization multiplies to the long cycle") {
  // (1,4)(3,4)(1,5)(2,3) read left to right: (1,4) acts first.
  const Permutation a = from_cycles(5, {{1, 2}});
  const Permutation b = from_cycles(5, {{0, 4}});
  const Permutation c = from_cycles(5, {{2, 3}});
  const Permutation d = from_cycles(5, {{0, 3}});
  CHECK(compose(compose(compose(a, b), c), d) == long_cycle(5));
}
