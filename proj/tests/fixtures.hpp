#ifndef LIE2KIT_TESTS_FIXTURES_HPP
#define LIE2KIT_TESTS_FIXTURES_HPP

#include "lie2kit/lie2core.hpp"

#include <string>
#include <vector>

namespace lie2kit::fixtures {

/// Zero-bracket algebra on the given space.
Lie2Algebra abelian(int dim0, int dim1);
Lie2Algebra abelian_with_diff(const RationalMatrix& diff);

/// g0 = span{e1,e2} with [e1,e2] = e2; g1 = 0.
Lie2Algebra aff1();

/// sl2(Q) on (E,F,H): [E,F] = H, [H,E] = 2E, [H,F] = -2F; g1 = 0.
Lie2Algebra sl2();

/// Heisenberg: [X,Y] = Z central; g1 = 0.
Lie2Algebra heis();

/// g0 = span{x}, g1 = span{a}, d = 0, l2(x,a) = a.
Lie2Algebra strict2();

/// aff1 in degree 0, one-dimensional degree 1 with l2(e1,a) = a.
Lie2Algebra aff1a();

/// Skeletal: g0 = Q^3 abelian, g1 = Q, l3 = det.
Lie2Algebra det3();

/// Skeletal: g0 = sl2, g1 = Q trivial, l3(E,F,H) = 1.
Lie2Algebra string_sl2();

/// g0 = heis, g1 = Q, d = 0, l2(X,a) = a (X the first Heisenberg generator).
Lie2Algebra heisa();

/// g0 = span{u}, g1 = span{a}, d(a) = u, zero brackets.
Lie2Algebra dfix();

/// Named corpus of valid algebras.
std::vector<std::pair<std::string, Lie2Algebra>> valid_algebras();

}  // namespace lie2kit::fixtures

#endif
