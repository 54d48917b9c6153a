#include "jetkernel/factorization.hpp"

#include <algorithm>
#include <map>

#include "jetkernel/error.hpp"
#include "jetkernel/hadamard.hpp"

namespace jetkernel {

namespace {

Polynomial var(const std::vector<std::string>& vars, const std::string& name) {
  return Polynomial::variable(vars, name);
}

// Same source, same target dimension and the same components; target
// coordinate names of R^K are not compared.
bool maps_agree(const FormalMorphism& a, const FormalMorphism& b) {
  return a.source() == b.source() && a.target().dim() == b.target().dim() &&
         a.components() == b.components();
}

void check(VerificationRecord& record, std::string identity, bool exact) {
  record.push_back({std::move(identity), exact});
}

template <class Fn>
bool holds(Fn&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    return false;
  }
}

void require_same_shape(const FactorizationPair& p, const FactorizationPair& q) {
  if (!(p.source() == q.source())) {
    throw Error(ErrorKind::shape, "factorizations have different sources");
  }
  if (p.level() != q.level()) {
    throw Error(ErrorKind::shape, "factorizations have different levels " +
                                      std::to_string(p.level()) + " and " +
                                      std::to_string(q.level()));
  }
}

// Pulls a polynomial on a rectified middle space V = [u, t, x] back to the
// source coordinates along (u, t, 0).
Polynomial on_zero_section(const Polynomial& g, const FormalSpace& middle,
                           const FormalSpace& source) {
  const auto& vc = middle.coordinates();
  const auto& sc = source.coordinates();
  std::map<std::string, Polynomial> a;
  for (std::size_t c = 0; c < vc.size(); ++c) {
    a.emplace(vc[c], c < sc.size() ? var(sc, sc[c]) : Polynomial(sc));
  }
  return substitute(g, a, &sc);
}

WitnessSpan assemble_span(const FactorizationPair& rect, const FactorizationPair& rect_q,
                          std::vector<Polynomial> delta, std::vector<std::vector<Polynomial>> mu,
                          std::vector<Polynomial> h) {
  const FormalSpace& src = rect.source();
  const auto& sc = src.coordinates();
  const std::size_t s = sc.size();
  const auto& vc = rect.middle().coordinates();
  const auto& wc_q = rect_q.middle().coordinates();
  const std::size_t n = h.size();

  std::vector<std::string> wc;
  for (const auto& c : vc) wc.push_back(fresh_name("a_" + c, wc));
  for (const auto& c : wc_q) wc.push_back(fresh_name("b_" + c, wc));
  std::vector<std::string> jnames;
  for (std::size_t i = 1; i <= n; ++i) {
    jnames.push_back(fresh_name("j" + std::to_string(i), wc));
    wc.push_back(jnames.back());
  }
  auto a_of = [&](std::size_t c) { return wc[c]; };
  auto b_of = [&](std::size_t c) { return wc[vc.size() + c]; };
  FormalSpace W = FormalSpace::cartesian("W", wc);

  std::vector<Polynomial> alpha;
  for (const auto& c : vc) alpha.push_back(var(vc, c));
  for (std::size_t c = 0; c < wc_q.size(); ++c) {
    alpha.push_back(c < s ? var(vc, vc[c]) : Polynomial(vc));
  }
  for (std::size_t i = 0; i < n; ++i) alpha.push_back(Polynomial(vc));

  std::map<std::string, Polynomial> eps_to_t;
  for (std::size_t i = src.params().size(); i < s; ++i) eps_to_t.emplace(sc[i], var(wc_q, wc_q[i]));
  std::vector<Polynomial> alpha_q;
  for (std::size_t c = 0; c < vc.size(); ++c) {
    alpha_q.push_back(c < s ? var(wc_q, wc_q[c]) : Polynomial(wc_q));
  }
  for (const auto& c : wc_q) alpha_q.push_back(var(wc_q, c));
  for (const auto& hi : h) alpha_q.push_back(substitute(hi, eps_to_t, &wc_q));

  std::map<std::string, Polynomial> to_a;
  for (std::size_t c = 0; c < vc.size(); ++c) to_a.emplace(vc[c], var(wc, a_of(c)));
  std::map<std::string, Polynomial> q_zero;
  std::map<std::string, Polynomial> q_full;
  for (std::size_t c = 0; c < wc_q.size(); ++c) {
    q_zero.emplace(wc_q[c], c < s ? var(wc, a_of(c)) : Polynomial(wc));
    q_full.emplace(wc_q[c], c < s ? var(wc, a_of(c)) : var(wc, b_of(c)));
  }
  std::map<std::string, Polynomial> src_to_a;
  for (std::size_t c = 0; c < s; ++c) src_to_a.emplace(sc[c], var(wc, a_of(c)));

  std::vector<Polynomial> phi;
  for (std::size_t k = 0; k < rect.level(); ++k) {
    Polynomial v = substitute(rect.f().component(k), to_a, &wc);
    v -= substitute(rect_q.f().component(k), q_zero, &wc);
    v += substitute(rect_q.f().component(k), q_full, &wc);
    for (std::size_t i = 0; i < n; ++i) {
      v += var(wc, jnames[i]) * substitute(mu[i][k], src_to_a, &wc);
    }
    phi.push_back(std::move(v));
  }

  return WitnessSpan{W,
                     FormalMorphism(rect.middle(), W, std::move(alpha)),
                     FormalMorphism(rect_q.middle(), W, std::move(alpha_q)),
                     FormalMorphism(W, rect.f().target(), std::move(phi)),
                     std::move(delta),
                     std::move(mu),
                     std::move(h),
                     rect,
                     rect_q,
                     {}};
}

WitnessSpan span_over_ideal(const FactorizationPair& p, const FactorizationPair& q) {
  require_same_shape(p, q);
  if (!is_rectified(p.iota()) || !is_rectified(q.iota())) {
    throw Error(ErrorKind::not_rectified, "both embeddings must be of the form (u, e, 0)");
  }
  const FormalSpace& src = p.source();
  const WeilAlgebra& A = src.thickening();
  std::vector<Polynomial> delta;
  for (std::size_t k = 0; k < p.level(); ++k) {
    delta.push_back(on_zero_section(q.f().component(k), q.middle(), src) -
                    on_zero_section(p.f().component(k), p.middle(), src));
  }
  const std::size_t n = A.generators().size();
  std::vector<std::vector<Polynomial>> mu(n);
  for (std::size_t k = 0; k < delta.size(); ++k) {
    std::vector<Polynomial> c;
    try {
      c = ideal_decompose(delta[k], A);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_in_ideal) throw;
      throw Error(ErrorKind::not_in_ideal,
                  "difference in component " + std::to_string(k) + ": " + e.what());
    }
    for (std::size_t i = 0; i < n; ++i) mu[i].push_back(c[i]);
  }
  WitnessSpan span = assemble_span(p, q, std::move(delta), std::move(mu), A.generators());
  span.verification = verify_witness(span, p, q);
  return span;
}

}  // namespace

FactorizationPair::FactorizationPair(FormalMorphism iota, FormalMorphism f)
    : iota_(std::move(iota)), f_(std::move(f)) {
  if (!iota_.target().is_cartesian()) {
    throw Error(ErrorKind::shape, "the middle space " + iota_.target().name() + " is not Cartesian");
  }
  if (!(iota_.target() == f_.source())) {
    throw Error(ErrorKind::type_mismatch, "iota lands in " + iota_.target().name() +
                                              " but f starts at " + f_.source().name());
  }
  if (!f_.target().is_cartesian()) {
    throw Error(ErrorKind::shape, "the target " + f_.target().name() + " is not Cartesian");
  }
}

FormalSpace rk_space(std::size_t k) {
  std::vector<std::string> coords;
  for (std::size_t i = 1; i <= k; ++i) coords.push_back("y" + std::to_string(i));
  return FormalSpace::cartesian("R^" + std::to_string(k), std::move(coords));
}

FormalMorphism composite(const FactorizationPair& p) { return compose(p.f(), p.iota()); }

std::optional<std::size_t> first_composite_difference(const FactorizationPair& p,
                                                      const FactorizationPair& q) {
  require_same_shape(p, q);
  FormalMorphism a = composite(p);
  FormalMorphism b = composite(q);
  for (std::size_t k = 0; k < a.components().size(); ++k) {
    if (!(a.component(k) == b.component(k))) return k;
  }
  return std::nullopt;
}

bool equal_composites(const FactorizationPair& p, const FactorizationPair& q) {
  return !first_composite_difference(p, q).has_value();
}

bool all_exact(const VerificationRecord& record) {
  return std::all_of(record.begin(), record.end(), [](const IdentityCheck& c) { return c.exact; });
}

std::string first_violation(const VerificationRecord& record) {
  for (const auto& c : record) {
    if (!c.exact) return c.identity;
  }
  return {};
}

VerificationRecord verify_step(const RelationStep& step) {
  const bool fwd = step.direction == Direction::forward;
  const FactorizationPair& lo = fwd ? step.from : step.to;  // connecting starts here
  const FactorizationPair& hi = fwd ? step.to : step.from;
  VerificationRecord r;
  check(r, "connecting o iota = iota'", holds([&] {
          return compose(step.connecting, lo.iota()) == hi.iota();
        }));
  check(r, "f = f' o connecting", holds([&] {
          return maps_agree(lo.f(), compose(hi.f(), step.connecting));
        }));
  return r;
}

EmbeddedFactorization embed_factorization(const FactorizationPair& p) {
  const FormalSpace& src = p.source();
  const FormalSpace& V = p.middle();
  const auto& sc = src.coordinates();
  std::vector<std::string> tc = V.coordinates();
  for (const auto& c : sc) tc.push_back(fresh_name(c, tc));
  FormalSpace T = FormalSpace::cartesian(V.name() + "xUxR", tc);

  std::vector<Polynomial> iota = p.iota().components();
  for (const auto& c : sc) iota.push_back(var(sc, c));
  std::vector<Polynomial> proj;
  for (const auto& c : V.coordinates()) proj.push_back(var(tc, c));
  FormalMorphism pr(T, V, std::move(proj));
  FactorizationPair hat(FormalMorphism(src, T, std::move(iota)), compose(p.f(), pr));
  return {hat, RelationStep{hat, p, pr, Direction::forward}};
}

VerificationRecord verify_witness(const WitnessSpan& span, const FactorizationPair& p,
                                  const FactorizationPair& q) {
  VerificationRecord r;
  check(r, "phi o alpha = f", holds([&] { return maps_agree(compose(span.phi, span.alpha), p.f()); }));
  check(r, "phi o alpha' = f'",
        holds([&] { return maps_agree(compose(span.phi, span.alpha_prime), q.f()); }));
  check(r, "alpha o iota = alpha' o iota'", holds([&] {
          return compose(span.alpha, p.iota()) == compose(span.alpha_prime, q.iota());
        }));
  const FactorizationPair& a = span.rectified;
  const FactorizationPair& b = span.rectified_prime;
  check(r, "delta = f'(.,0) - f(.,0)", holds([&] {
          if (span.delta.size() != a.level()) return false;
          for (std::size_t k = 0; k < a.level(); ++k) {
            Polynomial expect = on_zero_section(b.f().component(k), b.middle(), a.source()) -
                                on_zero_section(a.f().component(k), a.middle(), a.source());
            if (!(expect == span.delta[k])) return false;
          }
          return true;
        }));
  check(r, "delta = sum h mu", holds([&] {
          if (span.mu.size() != span.h.size()) return false;
          for (std::size_t k = 0; k < span.delta.size(); ++k) {
            Polynomial sum;
            for (std::size_t i = 0; i < span.h.size(); ++i) sum += span.h[i] * span.mu[i][k];
            if (!(sum == span.delta[k])) return false;
          }
          return true;
        }));
  return r;
}

WitnessSpan witness_d1(const FactorizationPair& p, const FactorizationPair& q) {
  require_same_shape(p, q);
  const FormalSpace& src = p.source();
  if (!src.params().empty() || src.thickening().embedding_dim() != 1 ||
      src.thickening().dim() != 2) {
    throw Error(ErrorKind::shape, "witness_d1 needs the source D1(1)");
  }
  if (!is_mono_point(p.iota()) || !is_mono_point(q.iota())) {
    throw Error(ErrorKind::non_mono, "both embeddings must be monomorphisms");
  }
  AffineRectification rp = rectify_affine(p.iota());
  AffineRectification rq = rectify_affine(q.iota());
  FactorizationPair a(compose(rp.diffeo, p.iota()), compose(p.f(), rp.inverse));
  FactorizationPair b(compose(rq.diffeo, q.iota()), compose(q.f(), rq.inverse));

  const auto& sc = src.coordinates();
  const std::string& t = sc[0];
  std::vector<Polynomial> delta;
  std::vector<std::vector<Polynomial>> mu(1);
  for (std::size_t k = 0; k < p.level(); ++k) {
    delta.push_back(on_zero_section(b.f().component(k), b.middle(), src) -
                    on_zero_section(a.f().component(k), a.middle(), src));
    auto rem = vanishing_quotient(delta.back(), {t}, 1);
    auto it = rem.find(MultiIndex{2});
    mu[0].push_back(it == rem.end() ? Polynomial(sc) : it->second.aligned(sc));
  }
  std::vector<Polynomial> h{var(sc, t).pow(2)};
  WitnessSpan span = assemble_span(a, b, std::move(delta), std::move(mu), std::move(h));
  span.alpha = compose(span.alpha, rp.diffeo);
  span.alpha_prime = compose(span.alpha_prime, rq.diffeo);
  span.verification = verify_witness(span, p, q);
  return span;
}

WitnessSpan witness_point(const FactorizationPair& p, const FactorizationPair& q) {
  if (!p.source().params().empty()) {
    throw Error(ErrorKind::shape, "witness_point needs a source without parameters");
  }
  return span_over_ideal(p, q);
}

WitnessSpan witness_general(const FactorizationPair& p, const FactorizationPair& q) {
  return span_over_ideal(p, q);
}

VerificationRecord verify_chain(const EquivalenceChain& chain, const FactorizationPair& p,
                                const FactorizationPair& q) {
  VerificationRecord r;
  if (chain.steps.empty()) {
    check(r, "empty chain joins identical pairs", p == q);
    return r;
  }
  check(r, "chain starts at p", chain.steps.front().from == p);
  check(r, "chain ends at p'", chain.steps.back().to == q);
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    if (i > 0) {
      check(r, "step " + std::to_string(i + 1) + " continues step " + std::to_string(i),
            chain.steps[i - 1].to == chain.steps[i].from);
    }
    for (auto& c : verify_step(chain.steps[i])) {
      check(r, "step " + std::to_string(i + 1) + ": " + c.identity, c.exact);
    }
  }
  return r;
}

EquivalenceDecision decide_equivalence(const FactorizationPair& p, const FactorizationPair& q) {
  EquivalenceDecision out;
  out.first_difference = first_composite_difference(p, q);
  if (out.first_difference) return out;
  out.equivalent = true;
  EquivalenceChain chain;
  if (!(p == q)) {
    EmbeddedFactorization ep = embed_factorization(p);
    EmbeddedFactorization eq = embed_factorization(q);
    ShearRectification sp = shear_rectify(ep.pair.iota());
    ShearRectification sq = shear_rectify(eq.pair.iota());
    FactorizationPair rp(sp.rectified, compose(ep.pair.f(), sp.diffeo));
    FactorizationPair rq(sq.rectified, compose(eq.pair.f(), sq.diffeo));
    WitnessSpan span = witness_general(rp, rq);
    FactorizationPair mid(compose(span.alpha, rp.iota()), span.phi);

    chain.steps.push_back({p, ep.pair, ep.step.connecting, Direction::backward});
    chain.steps.push_back({ep.pair, rp, sp.diffeo, Direction::backward});
    chain.steps.push_back({rp, mid, span.alpha, Direction::forward});
    chain.steps.push_back({mid, rq, span.alpha_prime, Direction::backward});
    chain.steps.push_back({rq, eq.pair, sq.diffeo, Direction::forward});
    chain.steps.push_back({eq.pair, q, eq.step.connecting, Direction::forward});
    chain.span = std::move(span);
  }
  out.verification = verify_chain(chain, p, q);
  if (!all_exact(out.verification)) {
    throw Error(ErrorKind::internal_consistency,
                "constructed chain fails: " + first_violation(out.verification));
  }
  out.chain = std::move(chain);
  return out;
}

FactorizationPair lift_plot(const FormalSpace& source, const std::vector<Polynomial>& plot) {
  const auto& sc = source.coordinates();
  FormalSpace V = FormalSpace::cartesian(source.name() + "_V", sc);
  std::vector<Polynomial> iota;
  for (const auto& c : sc) iota.push_back(var(sc, c));
  std::vector<Polynomial> f;
  for (const auto& g : plot) {
    for (const auto& v : g.used_vars()) {
      if (std::find(sc.begin(), sc.end(), v) == sc.end()) {
        throw Error(ErrorKind::type_mismatch,
                    "plot uses '" + v + "', which is not a coordinate of " + source.name());
      }
    }
    f.push_back(source.thickening().reduce(g.aligned(sc)));
  }
  return FactorizationPair(FormalMorphism(source, V, std::move(iota)),
                           FormalMorphism(V, rk_space(plot.size()), std::move(f)));
}

}  // namespace jetkernel
