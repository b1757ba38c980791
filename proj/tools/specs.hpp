#pragma once

// Textual specs for the command line.
//
//   domain    <mask>:<lo0,hi0[,lo1,hi1,...]>[:res=R[,R...]][:center=..][:r=..][:rin=..][:rout=..]
//             mask is box, ball or annulus, e.g. box:0,1:res=1000
//   phi       <family>[:key=value...]       e.g. power:p=2, double_phase:p=2:q=4:weight=x0:a=1
//   field     <name>[:value][:key=value...] e.g. const:1, linear:slope=2, oscillation:n=10
//   integrand <name>[:key=value...]         e.g. abs_xi, abs_xi_pow:k=2, affine_max:rows=1,0/0,1:offsets=0,0
//   n list    a..b (doubling from a up to b) or a comma list

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/energy.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/phi.hpp"

namespace orlicz::cli {

struct SpecTokens {
  std::string name;
  std::vector<std::string> positional;
  std::map<std::string, std::string> keys;

  bool has(const std::string& key) const { return keys.count(key) != 0; }
  double number(const std::string& key, double fallback) const;
  std::vector<double> numbers(const std::string& key) const;
};

SpecTokens tokenize(std::string_view spec);

GridDomain parse_domain(std::string_view spec);
PhiFunction parse_phi(std::string_view spec);
FieldExpr parse_field(std::string_view spec);
Integrand parse_integrand(std::string_view spec);
std::vector<long> parse_n_list(std::string_view spec);
std::vector<double> parse_number_list(std::string_view spec);

}  // namespace orlicz::cli
