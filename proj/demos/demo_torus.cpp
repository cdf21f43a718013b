// Builds torus nets for a few invariant-factor pairs, verifies each one,
// and identifies the multiplication group from the Latin square.

#include <iostream>

#include "planet/construct.hpp"
#include "planet/net.hpp"
#include "planet/quasigroup.hpp"

int main() {
  using namespace planet;

  const int pairs[][2] = {{1, 5}, {2, 2}, {2, 4}, {3, 3}, {2, 10}};
  for (const auto& p : pairs) {
    Net<CD> net = torus_net(p[0], p[1]);
    NetReport rep = verify_net(net);
    GroupId gid = group_identify(normalize_to_loop(latin_from_net(net), 0, 0));

    std::cout << "(" << p[0] << ", " << p[1] << "): "
              << (rep.ok ? "verified" : "NOT a net") << ", k = " << rep.k
              << ", m = " << rep.m << ", factors =";
    for (int f : gid.invariant_factors) std::cout << " " << f;
    std::cout << "\n";
  }

  std::cout << "\nthree invariant factors are rejected:\n";
  try {
    torus_net({2, 2, 2});
  } catch (const DomainError& e) {
    std::cout << "  " << e.what() << "\n";
  }
  return 0;
}
