#pragma once

#include <vector>

#include "stokes/gaussian.hpp"
#include "stokes/roots.hpp"

namespace stokes {

/// Dense m x m matrix over Q(i); exact arithmetic only.
using GMatrix = std::vector<std::vector<GaussianRational>>;

GMatrix gmat_identity(std::size_t m);
GMatrix gmat_mul(const GMatrix& a, const GMatrix& b);
GMatrix gmat_add(const GMatrix& a, const GMatrix& b);
GMatrix gmat_scale(const GMatrix& a, const GaussianRational& c);
/// Characteristic polynomial det(lambda I - A) by Faddeev-LeVerrier.
GPoly gmat_charpoly(const GMatrix& a);
/// One kernel vector of a singular matrix.
std::vector<GaussianRational> gmat_kernel_vector(GMatrix a);
/// Exact inverse; throws DomainError when singular.
GMatrix gmat_inverse(GMatrix a);

}  // namespace stokes
