#pragma once

// Jacobian nullwerte of odd theta functions and the classical identities
// relating them to theta constants.

#include <array>

#include "bitangent/theta.hpp"

namespace bitangent {

/// det[grad theta_{n1}; grad theta_{n2}; grad theta_{n3}] at z = 0 (rows in
/// argument order). Throws EvenCharacteristic if an argument is even.
cplx jacobian_D(const ThetaTable& table, Characteristic n1, Characteristic n2, Characteristic n3);
inline cplx jacobian_D(const ThetaTable& table, int l1, int l2, int l3) {
  return jacobian_D(table, Characteristic::from_label(l1), Characteristic::from_label(l2),
                    Characteristic::from_label(l3));
}

/// The unique five even characteristics completing an azygetic odd triple to
/// a fundamental system, ascending by label. Throws SyzygeticTriple for a
/// syzygetic triple and InputError for even or repeated arguments.
std::array<Characteristic, 5> complete_fundamental(Characteristic n1, Characteristic n2, Characteristic n3);

/// pi^3 * prod |theta_m| over the completing even characteristics; equals |D(n1,n2,n3)|.
double jacobi_modulus(const ThetaTable& table, Characteristic n1, Characteristic n2, Characteristic n3);

using ThetaQuad = std::array<Characteristic, 4>;

struct RiemannCheck {
  int sign2 = 1;             // chosen s2
  int sign3 = 1;             // chosen s3
  double residual = 0;       // |r1 + s2 r2 + s3 r3|
  double relative = 0;       // residual / |r1|
};

/// r_i = product of the four constants of quad i; picks (s2, s3) minimizing
/// |r1 + s2 r2 + s3 r3|.
RiemannCheck riemann_relation_check(const ThetaTable& table, const ThetaQuad& q1, const ThetaQuad& q2,
                                    const ThetaQuad& q3);

/// The two quartic relations used to reconcile the two expressions of X65:
///   th52 th75 th41 th66 - th03 th10 th24 th37 = th14 th07 th33 th20
///   th40 th67 th41 th66 - th03 th02 th24 th25 = th06 th21 th07 th20
std::array<std::array<ThetaQuad, 3>, 2> reference_riemann_relations();

}  // namespace bitangent
