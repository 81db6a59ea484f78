#include "doctest.h"

#include "ietlab/permutation.hpp"

using namespace ietlab;

TEST_CASE("construction validates bijections of 1..n") {
  CHECK_NOTHROW(Permutation({1}));
  CHECK_NOTHROW(Permutation({3, 1, 2}));
  CHECK_THROWS_AS(Permutation({2, 2}), InvalidPermutationError);
  CHECK_THROWS_AS(Permutation({0, 1}), InvalidPermutationError);
  CHECK_THROWS_AS(Permutation({1, 3}), InvalidPermutationError);
  CHECK_THROWS_AS(Permutation({}), InvalidPermutationError);
}

TEST_CASE("images are 1-based") {
  Permutation p({3, 1, 2});
  CHECK(p.size() == 3);
  CHECK(p.image(1) == 3);
  CHECK(p.image(2) == 1);
  CHECK(p.image(3) == 2);
  CHECK(p.images() == std::vector<int>{3, 1, 2});
}

TEST_CASE("inverse composes to the identity") {
  Permutation p({4, 2, 1, 3});
  Permutation q = p.inverse();
  for (int i = 1; i <= 4; ++i) {
    CHECK(q.image(p.image(i)) == i);
    CHECK(p.image(q.image(i)) == i);
  }
  CHECK(Permutation::identity(3).inverse() == Permutation::identity(3));
}

TEST_CASE("irreducibility means no invariant prefix") {
  CHECK(Permutation({2, 1}).irreducible());
  CHECK(Permutation({3, 2, 1}).irreducible());
  CHECK(Permutation({3, 1, 2}).irreducible());
  CHECK_FALSE(Permutation::identity(2).irreducible());
  CHECK_FALSE(Permutation({2, 1, 3}).irreducible());  // {1,2} invariant
  CHECK_FALSE(Permutation({1, 3, 2}).irreducible());  // {1} invariant
  CHECK(Permutation({1}).irreducible());              // no proper prefix
}

TEST_CASE("text form") {
  CHECK(Permutation({3, 2, 1}).str() == "(3 2 1)");
  CHECK(Permutation({1}).str() == "(1)");
}

TEST_CASE("ordering is lexicographic on images") {
  CHECK(Permutation({2, 1, 3}) < Permutation({3, 1, 2}));
  CHECK(Permutation({2, 1}) == Permutation({2, 1}));
}
