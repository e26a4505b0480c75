#ifndef HTDEPTH_IO_HPP_
#define HTDEPTH_IO_HPP_

// CSV interchange formats. Point clouds: one point per row, d numeric
// columns, no header unless asked to skip one. H-polytopes: d+1 columns per
// row, u_1..u_d,t, with |u| = 1 enforced on load (the row is renormalized
// and t rescaled accordingly).

#include <string>

#include "htdepth/geom.hpp"

namespace htdepth {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PointCloud read_point_cloud(const std::string& path, bool skip_header = false);
void write_point_cloud(const std::string& path, const PointCloud& cloud);

HPolytope read_hpolytope(const std::string& path);
void write_hpolytope(const std::string& path, const HPolytope& poly);

}  // namespace htdepth

#endif  // HTDEPTH_IO_HPP_
