#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hml/vhs/variation.hpp"

namespace hml::vhs {

/// Weight-r variation H¹⊗…⊗H¹ of r elliptic curves, factor a with period (1, t_{μ(a)}).
/// The polarization is ±Q₁^{⊗r}, sign chosen so the (r,0) block is positive.
std::shared_ptr<const Variation> tensor_product_variation(int factors);

/// Closed-form families: upper-half-plane, constant, sym2, two-param-abelian,
/// triple-product, quadruple-product.  Lower degrees are constant.
std::shared_ptr<const Family> builtin_family(const std::string& name);
const std::vector<std::string>& builtin_names();
bool is_builtin(const std::string& name);

}  // namespace hml::vhs
