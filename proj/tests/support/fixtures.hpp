#pragma once

#include <vector>

#include "syncwalk/chain.hpp"
#include "syncwalk/law.hpp"
#include "syncwalk/mapping.hpp"
#include "syncwalk/rational.hpp"

namespace testsupport {

using syncwalk::MappingLaw;
using syncwalk::MappingTable;
using syncwalk::Rat;
using syncwalk::StochasticMatrix;

// The running 3-state example: q(1,2)=2/3, q(1,3)=1/3, q(2,1)=1/3,
// q(2,3)=2/3, q(3,1)=2/3, q(3,2)=1/3 (1-based), zero diagonal.
inline StochasticMatrix three_state_chain() {
  return StochasticMatrix({
      {Rat(0), Rat(2, 3), Rat(1, 3)},
      {Rat(1, 3), Rat(0), Rat(2, 3)},
      {Rat(2, 3), Rat(1, 3), Rat(0)},
  });
}

// The four named maps on {1,2,3} (stored 0-based).
inline MappingTable sigma1() { return MappingTable{{2, 2, 0}}; }  // 1,2 -> 3, 3 -> 1
inline MappingTable sigma2() { return MappingTable{{1, 0, 1}}; }  // 1,3 -> 2, 2 -> 1
inline MappingTable sigma3() { return MappingTable{{1, 2, 0}}; }  // cycle 1->2->3->1
inline MappingTable sigma4() { return MappingTable{{2, 0, 1}}; }  // cycle 1->3->2->1

// Uniform law on {sigma1, sigma2, sigma3}.
inline MappingLaw law_mu1() {
  return MappingLaw(3, {{sigma1(), Rat(1, 3)}, {sigma2(), Rat(1, 3)}, {sigma3(), Rat(1, 3)}});
}

// 2/3 on sigma3, 1/3 on sigma4 (permutations only).
inline MappingLaw law_mu2() {
  return MappingLaw(3, {{sigma3(), Rat(2, 3)}, {sigma4(), Rat(1, 3)}});
}

// Symmetric two-state chain ((p,1-p),(1-p,p)).
inline StochasticMatrix two_state_chain(const Rat& p) {
  return StochasticMatrix({{p, Rat(1) - p}, {Rat(1) - p, p}});
}

}  // namespace testsupport
