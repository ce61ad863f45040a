#ifndef SUPERSPLINES_SUPERSPLINES_HPP
#define SUPERSPLINES_SUPERSPLINES_HPP

#include <supersplines/rational.hpp>
#include <supersplines/matrix.hpp>
#include <supersplines/polynomial.hpp>
#include <supersplines/mesh.hpp>
#include <supersplines/ideals.hpp>
#include <supersplines/dimension.hpp>
#include <supersplines/refine.hpp>

#endif  // SUPERSPLINES_SUPERSPLINES_HPP
