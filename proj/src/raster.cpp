#include "mmaf/raster.hpp"

#include <string>

#include "mmaf/error.hpp"

namespace mmaf {

RasterCube::RasterCube(int n_t_, int n_x_, double h_t_, double h_s_, double t0_, double x0_)
    : n_t(n_t_), n_x(n_x_), h_t(h_t_), h_s(h_s_), t0(t0_), x0(x0_)
{
    require(n_t >= 0 && n_x >= 0, ErrorKind::invalid_parameter, "raster cube: negative dimensions");
    require(h_t > 0.0 && h_s > 0.0, ErrorKind::invalid_parameter, "raster cube: steps must be positive");
    values.assign(static_cast<std::size_t>(n_t) * n_x, 0.0);
}

RasterCube RasterCube::slice(int first, int rows) const
{
    require(first >= 0 && rows >= 0 && first + rows <= n_t, ErrorKind::invalid_parameter,
            "raster cube: slice [" + std::to_string(first) + ", " + std::to_string(first + rows)
                + ") outside " + std::to_string(n_t) + " frames");
    RasterCube out(rows, n_x, h_t, h_s, time(first), x0);
    std::copy(values.begin() + static_cast<std::ptrdiff_t>(first) * n_x,
              values.begin() + static_cast<std::ptrdiff_t>(first + rows) * n_x, out.values.begin());
    return out;
}

RasterCube RasterCube::head(int rows) const
{
    return slice(0, rows);
}

}  // namespace mmaf
