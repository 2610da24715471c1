#pragma once

// Expression-tree internals, shared by the evaluator and the serializer.

#include <mutex>
#include <vector>

#include "gfcalc/smoothfn.hpp"

namespace gfcalc {

enum class NodeKind {
  Const,
  Id,
  VarU,
  Affine,
  Sum,
  Prod,
  IntPow,
  Sin,
  Cos,
  Exp,
  BumpDeriv,
  Antideriv,
  Poly,
  Conv,
  Compose
};

class SmoothFnNode {
public:
  NodeKind kind;
  double a = 0.0;  // Const value / Affine slope
  double b = 0.0;  // Affine offset
  int ipar = 0;    // IntPow exponent / BumpDeriv order
  std::vector<double> coeffs;
  std::vector<SmoothFn> kids;
  std::shared_ptr<const ConvSource> source;
  Support supp = Support::all();
  bool var_u = false;

  // Antideriv: total mass over the child's support, computed on first use.
  mutable std::once_flag mass_once;
  mutable double total_mass = 0.0;

  explicit SmoothFnNode(NodeKind k) : kind(k) {}
};

}  // namespace gfcalc
