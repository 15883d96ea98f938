// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace xsplanes {

/// A point of the unit cube [0,1)^3, or of its x-magnified slab image.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3&, const Point3&) = default;
};

} // namespace xsplanes
