#include "presets.hpp"

#include "dendra/error.hpp"

namespace dendra::cli {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> catalog = {
      {"hexagon-r1", "identities hexagon", "six unipotent generators of SL_3(Z) with r = 1", {{"r", "1"}}},
      {"hexagon-r2", "identities hexagon", "six unipotent generators with r = 2", {{"r", "2"}}},
      {"hexagon-r3", "identities hexagon", "six unipotent generators with r = 3", {{"r", "3"}}},
      {"hexagon-embedded-n4", "identities hexagon", "generators embedded in SL_4(Z) at i = 1, j = 2",
       {{"n", "4"}, {"i", "1"}, {"j", "2"}, {"l", "1"}}},
      {"hexagon-embedded-n5", "identities hexagon", "generators embedded in SL_5(Z) at i = 2, j = 4, power 2",
       {{"n", "5"}, {"i", "2"}, {"j", "4"}, {"l", "2"}}},
      {"ll-heisenberg", "identities ll", "commutator word identity for u1,2^r, u2,3, u1,3 over r <= 3, m,p,q <= 5",
       {{"r-max", "3"}, {"m-max", "5"}}},
      {"core-sl2-2", "identities core", "normal cores of all subgroups of SL_2(Z/2), order 6", {{"n", "2"}, {"mod", "2"}}},
      {"core-sl2-3", "identities core", "normal cores of all subgroups of SL_2(Z/3), order 24", {{"n", "2"}, {"mod", "3"}}},
      {"congruence-tower-3-2-1", "tower build", "coset trees of SL_3(Z) mod 2", {{"n", "3"}, {"p", "2"}, {"depth", "1"}}},
      {"congruence-tower-3-2-2", "tower build", "coset trees of SL_3(Z) mod 2 and 4",
       {{"n", "3"}, {"p", "2"}, {"depth", "2"}}},
      {"congruence-tower-2-2-3", "tower build", "coset trees of SL_2(Z) mod 2, 4 and 8",
       {{"n", "2"}, {"p", "2"}, {"depth", "3"}}},
      {"decorated-tower-3-2-2", "tower decorate", "pendant arcs over the orbit of a deep leaf of the (3,2,2) tower",
       {{"n", "3"}, {"p", "2"}, {"depth", "2"}}},
      {"star-dendrite-8", "tree info", "16 arms at angles sgn(i)(1 - 1/(2|i|))pi of length 1/|i|", {{"arms", "8"}}},
      {"torsion-z2", "order search", "cyclic group of order 2 generated by -I", {{"radius", "1"}}},
      {"torsion-z3", "order search", "cyclic group of order 3 in SL_2(Z)", {{"radius", "2"}}},
      {"torsion-z4", "order search", "cyclic group of order 4 in SL_2(Z)", {{"radius", "2"}}},
      {"z-ball-3", "order search", "infinite cyclic group generated by u1,2 in SL_2(Z)", {{"radius", "3"}}},
      {"z2-ball-1", "order search", "rank 2 free abelian group generated by u1,3 and u2,3", {{"radius", "1"}}},
      {"heisenberg-ball-2", "order search", "integral Heisenberg group generated by u1,2 and u2,3", {{"radius", "2"}}},
  };
  return catalog;
}

const Preset& find_preset(const std::string& name, const std::string& command) {
  for (const auto& p : presets())
    if (p.name == name) {
      if (p.command != command) throw Error("preset " + name + " belongs to `" + p.command + "`");
      return p;
    }
  throw Error("unknown preset: " + name);
}

}  // namespace dendra::cli
