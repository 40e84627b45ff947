#pragma once

#include "vemasp/mesh.hpp"

#include <functional>

namespace vemasp {

using ScalarField = std::function<double(Point2)>;
using VectorField = std::function<Point2(Point2)>;

}  // namespace vemasp
