#include "hc5/system.hpp"

#include <cstdio>
#include <ostream>

namespace hc5 {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_row(std::ostream& os, std::size_t step, const StateD& s) {
    os << step << ',' << fmt_double(s.x) << ',' << fmt_double(s.y) << ','
       << fmt_double(s.z) << ',' << fmt_double(s.u) << ',' << fmt_double(s.v) << '\n';
}

void write_row(std::ostream& os, std::size_t step, const StateFx& s) {
    os << step << ',' << fmt_double(s.x.to_double()) << ',' << fmt_double(s.y.to_double())
       << ',' << fmt_double(s.z.to_double()) << ',' << fmt_double(s.u.to_double()) << ','
       << fmt_double(s.v.to_double()) << ',' << s.x.raw_hex() << ',' << s.y.raw_hex()
       << ',' << s.z.raw_hex() << ',' << s.u.raw_hex() << ',' << s.v.raw_hex() << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const StateD& initial,
                          const std::vector<StateD>& steps) {
    os << "step,x,y,z,u,v\n";
    write_row(os, 0, initial);
    for (std::size_t i = 0; i < steps.size(); ++i) write_row(os, i + 1, steps[i]);
}

void write_trajectory_csv(std::ostream& os, const StateFx& initial,
                          const std::vector<StateFx>& steps) {
    os << "step,x,y,z,u,v,x_raw,y_raw,z_raw,u_raw,v_raw\n";
    write_row(os, 0, initial);
    for (std::size_t i = 0; i < steps.size(); ++i) write_row(os, i + 1, steps[i]);
}

}  // namespace hc5
