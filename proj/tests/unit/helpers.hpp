#pragma once

#include <functional>

#include "otsfd/field.hpp"
#include "otsfd/grid.hpp"

namespace testing {

inline otsfd::ScalarField1D field_1d(const otsfd::UniformGrid1D& g, const std::function<double(double)>& f) {
    otsfd::ScalarField1D u(g);
    for (int j = -g.ghost_width(); j < g.n() + g.ghost_width(); ++j) u[j] = f(g.x(j));
    return u;
}

inline otsfd::ScalarField2D field_2d(const otsfd::UniformGrid2D& g,
                                     const std::function<double(double, double)>& f) {
    otsfd::ScalarField2D u(g);
    const int w = g.ghost_width();
    for (int j = -w; j < g.ny() + w; ++j) {
        for (int i = -w; i < g.nx() + w; ++i) u(i, j) = f(g.x(i), g.y(j));
    }
    return u;
}

}  // namespace testing
