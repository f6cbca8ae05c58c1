#include "app.hpp"

namespace hasse::app {

namespace {

std::vector<Fixture> make_corpus() {
  std::vector<Fixture> c;
  c.push_back({"selmer",
               "3x^3 + 4y^3 + 5z^3: everywhere locally soluble cubic without rational points",
               {{"variables", {"x", "y", "z"}}, {"polynomial", "+3 x^3 | +4 y^3 | +5 z^3"}},
               {100, 100, 1000, 1},
               std::nullopt});
  c.push_back({"swinnerton_dyer",
               "t(t+x)(2t+x) minus the norm form of the cubic subfield of Q(zeta_7) (G1, alpha0 = 1)",
               to_json(make_params(Variant::G1, 7, 1, {}, 0, 2)),
               {100, 100, 1000, 1},
               std::nullopt});
  c.push_back({"sd_alpha2",
               "t(2t+x)(3t+x) minus the same norm form (G1, alpha0 = 2); no 7-adic point, so local fails at 7",
               to_json(make_params(Variant::G1, 7, 2, {}, 0, 2)),
               {100, 100, 1000, 1},
               "local"});
  c.push_back({"t1_n1",
               "T1 instance n = 1: N = 7, alpha0 = 2, beta = 1, gamma = 2",
               to_json(make_params(Variant::T1, 7, 2, {}, 1, 2)),
               {100, 25, 1000, 1},
               std::nullopt});
  c.push_back({"t1_n2",
               "T1 instance n = 2: N = 11, smallest admissible alpha0, beta = 1, gamma = 4",
               to_json(search_params(11, Variant::T1, 1, 1, 4).at(0)),
               {150, 3, 1000, 1},
               std::nullopt});
  return c;
}

}  // namespace

const std::vector<Fixture>& corpus() {
  static const std::vector<Fixture> fixtures = make_corpus();
  return fixtures;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : corpus()) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("unknown corpus fixture: " + name);
}

}  // namespace hasse::app
