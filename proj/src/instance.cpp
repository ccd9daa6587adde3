#include "giep/instance.hpp"

#include <algorithm>
#include <numeric>

#include "giep/error.hpp"

namespace giep {

Spectrum random_spectrum(std::size_t k, std::size_t l, std::mt19937_64& rng, double box,
                         double min_gap) {
  std::uniform_real_distribution<double> re(-box, box);
  std::uniform_real_distribution<double> im(min_gap, box);
  ComplexVector taken;
  auto fits = [&](Complex z) {
    return std::all_of(taken.begin(), taken.end(),
                       [&](const Complex& t) { return std::abs(t - z) >= min_gap; });
  };
  std::vector<ConjugatePair> pairs;
  while (pairs.size() < k) {
    const Complex z(re(rng), im(rng));
    if (!fits(z) || !fits(std::conj(z))) continue;
    taken.push_back(z);
    taken.push_back(std::conj(z));
    pairs.push_back({z.real(), z.imag()});
  }
  std::vector<double> reals;
  while (reals.size() < l) {
    const double g = re(rng);
    if (!fits(Complex(g, 0.0))) continue;
    taken.emplace_back(g, 0.0);
    reals.push_back(g);
  }
  return Spectrum(std::move(pairs), std::move(reals));
}

Graph random_planted_graph(const InstanceOptions& opt, std::mt19937_64& rng) {
  std::vector<std::size_t> order(opt.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  Graph g(opt.n, opt.directed);
  for (std::size_t j = 0; j < opt.k; ++j) {
    g.add_edge(order[2 * j], order[2 * j + 1]);
    if (opt.directed) g.add_edge(order[2 * j + 1], order[2 * j]);
  }
  std::bernoulli_distribution coin(opt.edge_prob);
  for (std::size_t a = 0; a < opt.n; ++a) {
    for (std::size_t b = opt.directed ? 0 : a + 1; b < opt.n; ++b) {
      if (a == b || g.has_edge(a, b)) continue;
      if (coin(rng)) g.add_edge(a, b);
    }
  }
  return g;
}

Instance random_instance(const InstanceOptions& opt, std::mt19937_64& rng) {
  if (opt.n == 0 || 2 * opt.k > opt.n)
    throw Error(ErrorKind::InvalidArgument, "random instance needs n >= 1 and 2k <= n");
  if (!(opt.edge_prob >= 0.0 && opt.edge_prob <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "edge probability must lie in [0, 1]");
  Spectrum s = random_spectrum(opt.k, opt.n - 2 * opt.k, rng, opt.box, opt.min_gap);
  Graph g = random_planted_graph(opt, rng);
  return {std::move(s), std::move(g)};
}

}  // namespace giep
