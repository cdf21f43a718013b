// End-to-end tour on two nets: verify, group identification, the cubic
// through the dual points with its classification, and the incidence-block
// picture with a cohomology dimension at an essential vector.

#include <iostream>
#include <vector>

#include "planet/algebraic.hpp"
#include "planet/construct.hpp"
#include "planet/net.hpp"
#include "planet/quasigroup.hpp"
#include "planet/resonance.hpp"

namespace {

template <class S>
void tour(const char* name, const planet::Net<S>& net) {
  using namespace planet;

  NetReport rep = verify_net(net);
  std::cout << name << ": k = " << rep.k << ", m = " << rep.m << ", r = " << rep.r
            << (rep.ok ? "" : "  NOT a net") << "\n";

  if (rep.k == 3) {
    GroupId gid = group_identify(normalize_to_loop(latin_from_net(net), 0, 0));
    std::cout << "  group factors:";
    for (int f : gid.invariant_factors) std::cout << " " << f;
    std::cout << "\n";

    auto alg = is_algebraic(net);
    std::cout << "  algebraic: " << (alg.algebraic ? "yes" : "no");
    if (alg.cubic_class) std::cout << ", cubic class: " << cubic_tag_name(alg.cubic_class->tag);
    std::cout << "\n";
  }

  auto pts = compute_points(net);
  std::vector<Line<S>> lines;
  for (const auto& cls : net.classes)
    for (const auto& l : cls) lines.push_back(l);
  ResonanceData data = q_blocks(incidence_matrix(pts, lines));
  std::cout << "  blocks: " << data.blocks.size() << ", affine: " << data.affine_count
            << ", cover: " << (data.affine_cover ? "yes" : "no") << "\n";

  ComponentV<S> comp = essential_component(net);
  std::cout << "  essential component dimension: " << comp.basis.size() << "\n";
  if (!comp.basis.empty()) {
    Arrangement<S> arr = arrangement_from_net(net);
    std::cout << "  h1 at a basis vector: " << os_h1_dim(arr, comp.basis[0]) << "\n";
  }
  std::cout << "\n";
}

}  // namespace

int main() {
  tour("braid net", planet::braid_net());
  tour("torus net (2, 4)", planet::torus_net(2, 4));
  tour("hessian net", planet::hessian_net());
  return 0;
}
