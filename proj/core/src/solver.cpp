#include "halfturn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <type_traits>

#include "halfturn/error.hpp"

namespace halfturn {

  void SolverConfig::validate() const {
    if (starts < 1) {
      throw std::invalid_argument("solver needs at least one start");
    }
    if (!(residual_tol > 0.0) || !(dedup_tol > 0.0) || !(sample_radius > 0.0)) {
      throw std::invalid_argument("solver tolerances and radius must be positive");
    }
    if (max_iter < 1) {
      throw std::invalid_argument("solver needs at least one iteration");
    }
  }

  double system_residual(PolySystem const& system, Point const& p) {
    double r = 0.0;
    for (auto const& eq : system.equations) {
      r = std::max(r, std::abs(eq.residual(p[0], p[1], p[2])));
    }
    return r;
  }

  namespace {
    using cplx = std::complex<double>;

    constexpr double real_tol       = 1e-8;
    constexpr double degenerate_tol = 1e-8;
    constexpr double divergence     = 1e8;
    constexpr unsigned max_halvings = 20;
    constexpr unsigned max_polish   = 20;
    constexpr unsigned max_refine   = 200;
    constexpr double   component_probe = 1e-4;

    template <typename T>
    constexpr T unit_roundoff() {
      if constexpr (std::is_same_v<T, __float128>) {
        return 0x1p-112Q;
      } else {
        return std::numeric_limits<T>::epsilon();
      }
    }

    // Polynomial with double coefficients over the reduced unknowns.
    struct Compiled {
      struct Term {
        std::array<unsigned, 3> exp;  // exponents of unknowns 0..k-1
        double                  coeff;
      };
      std::vector<Term> terms;
      double            constant_shift = 0.0;  // subtracted rhs

      template <typename T>
      std::complex<T> eval(std::array<std::complex<T>, 3> const& u) const {
        std::complex<T> sum = -static_cast<T>(constant_shift);
        for (auto const& t : terms) {
          std::complex<T> v = static_cast<T>(t.coeff);
          for (std::size_t i = 0; i < 3; ++i) {
            for (unsigned e = 0; e < t.exp[i]; ++e) {
              v *= u[i];
            }
          }
          sum += v;
        }
        return sum;
      }
    };

    Compiled compile(Poly3 const& p, std::vector<Var> const& unknowns, double rhs) {
      Compiled c;
      c.constant_shift = rhs;
      for (auto const& [e, coeff] : p.terms()) {
        Compiled::Term t{{0, 0, 0}, static_cast<double>(coeff)};
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
          t.exp[i] = e[static_cast<std::size_t>(unknowns[i])];
        }
        c.terms.push_back(t);
      }
      return c;
    }

    struct Newton {
      std::size_t                        k = 0;
      std::vector<Compiled>              equations;  // the square subsystem
      std::vector<std::vector<Compiled>> jacobian;   // [eq][unknown]

      template <typename T>
      T residual(std::array<std::complex<T>, 3> const& u) const {
        T r = 0;
        for (std::size_t i = 0; i < k; ++i) {
          r = std::max(r, std::abs(equations[i].eval(u)));
        }
        return r;
      }

      // Squared residual; std::abs is not available for every T.
      template <typename T>
      T residual2(std::array<std::complex<T>, 3> const& u) const {
        T r = 0;
        for (std::size_t i = 0; i < k; ++i) {
          r = std::max(r, std::norm(equations[i].eval(u)));
        }
        return r;
      }

      // Undamped Newton in precision T while the residual decreases.  Near a
      // multiple root double precision stalls at about the square root of
      // its epsilon.
      template <typename T>
      std::array<cplx, 3> refine(std::array<cplx, 3> const& start) const {
        std::array<std::complex<T>, 3> u;
        for (std::size_t i = 0; i < 3; ++i) {
          u[i] = {static_cast<T>(start[i].real()), static_cast<T>(start[i].imag())};
        }
        T r = residual2(u);
        for (unsigned it = 0; it < max_refine && r > 0; ++it) {
          std::array<std::complex<T>, 3> d;
          if (!step(u, d)) {
            break;
          }
          auto trial = u;
          for (std::size_t i = 0; i < k; ++i) {
            trial[i] += d[i];
          }
          T const rt = residual2(trial);
          if (!(rt < r)) {
            break;
          }
          u = trial;
          r = rt;
        }
        std::array<cplx, 3> out{};
        for (std::size_t i = 0; i < 3; ++i) {
          out[i] = {static_cast<double>(u[i].real()), static_cast<double>(u[i].imag())};
        }
        return out;
      }

      // Solves J d = -F; false when J is numerically singular.
      template <typename T>
      bool step(std::array<std::complex<T>, 3> const& u, std::array<std::complex<T>, 3>& d) const {
        using C = std::complex<T>;
        std::array<std::array<C, 4>, 3> m{};
        T                               scale2 = 0;
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            m[i][j] = jacobian[i][j].eval(u);
            scale2  = std::max(scale2, std::norm(m[i][j]));
          }
          m[i][k] = -equations[i].eval(u);
        }
        if (scale2 == 0) {
          return false;
        }
        T const cutoff = 100 * unit_roundoff<T>();
        for (std::size_t col = 0; col < k; ++col) {
          std::size_t piv = col;
          for (std::size_t r = col + 1; r < k; ++r) {
            if (std::norm(m[r][col]) > std::norm(m[piv][col])) {
              piv = r;
            }
          }
          if (std::norm(m[piv][col]) <= cutoff * cutoff * scale2) {
            return false;
          }
          std::swap(m[piv], m[col]);
          for (std::size_t r = col + 1; r < k; ++r) {
            C const f = m[r][col] / m[col][col];
            for (std::size_t c = col; c <= k; ++c) {
              m[r][c] -= f * m[col][c];
            }
          }
        }
        d = {};
        for (std::size_t i = k; i-- > 0;) {
          C s = m[i][k];
          for (std::size_t j = i + 1; j < k; ++j) {
            s -= m[i][j] * d[j];
          }
          d[i] = s / m[i][i];
        }
        return true;
      }

      // Damped step; returns the new residual or nothing on failure.
      std::optional<double> damped(std::array<cplx, 3>& u, double current) const {
        std::array<cplx, 3> d;
        if (!step(u, d)) {
          return std::nullopt;
        }
        double lambda = 1.0;
        for (unsigned h = 0; h <= max_halvings; ++h, lambda *= 0.5) {
          std::array<cplx, 3> trial = u;
          for (std::size_t i = 0; i < k; ++i) {
            trial[i] += lambda * d[i];
          }
          double const r = residual(trial);
          if (std::isfinite(r) && r < current) {
            u = trial;
            return r;
          }
        }
        return std::nullopt;
      }

      std::optional<std::array<cplx, 3>> run(std::array<cplx, 3> u,
                                             SolverConfig const& cfg) const {
        double r = residual(u);
        unsigned it = 0;
        for (; it < cfg.max_iter && r > cfg.residual_tol; ++it) {
          auto next = damped(u, r);
          if (!next) {
            return std::nullopt;
          }
          r = *next;
          for (std::size_t i = 0; i < k; ++i) {
            if (std::abs(u[i]) > divergence) {
              return std::nullopt;
            }
          }
        }
        if (r > cfg.residual_tol) {
          return std::nullopt;
        }
        // polish: near multiple roots the residual reaches the tolerance
        // well before the point stops moving
        for (unsigned p = 0; p < max_polish && r > 0.0; ++p) {
          auto next = damped(u, r);
          if (!next) {
            break;
          }
          r = *next;
        }
        return u;
      }
    };

    std::uint64_t splitmix64(std::uint64_t x) {
      x += 0x9E3779B97F4A7C15ULL;
      x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
      x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
      return x ^ (x >> 31);
    }

    double unit_uniform(std::mt19937_64& rng) {
      return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }

    std::array<cplx, 3> sample_start(std::uint64_t seed, unsigned index, std::size_t k, double radius) {
      std::mt19937_64     rng(splitmix64(seed ^ splitmix64(index)));
      std::array<cplx, 3> u{};
      for (std::size_t i = 0; i < k; ++i) {
        double const r     = radius * std::sqrt(unit_uniform(rng));
        double const theta = 2.0 * std::numbers::pi * unit_uniform(rng);
        u[i]               = std::polar(r, theta);
      }
      return u;
    }

    double point_distance(Point const& a, Point const& b) {
      double d = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
      }
      return d;
    }

    bool point_less(Point const& a, Point const& b) {
      for (std::size_t i = 0; i < 3; ++i) {
        if (a[i].real() != b[i].real()) {
          return a[i].real() < b[i].real();
        }
        if (a[i].imag() != b[i].imag()) {
          return a[i].imag() < b[i].imag();
        }
      }
      return false;
    }

    void classify(Solution& s) {
      double max_im = 0.0;
      for (auto const& t : s.point) {
        max_im = std::max(max_im, std::abs(t.imag()));
        if (std::abs(t * t - 4.0) <= degenerate_tol) {
          s.degenerate = true;
        }
      }
      s.real_triple       = max_im <= real_tol;
      s.complex_candidate = !s.real_triple;
    }
  }  // namespace

  SolveResult solve(PolySystem const& system, SolverConfig const& config) {
    config.validate();
    SolveResult result;

    std::vector<Var> const unknowns = system.unknowns();
    std::size_t const      k        = unknowns.size();

    // representative variables that no equation mentions are left at 0
    for (Var v : {Var::x, Var::y, Var::z}) {
      bool const representative = system.identification[static_cast<std::size_t>(v)] == v;
      if (representative && std::find(unknowns.begin(), unknowns.end(), v) == unknowns.end()) {
        result.warnings.push_back(std::string("variable ") + static_cast<char>('x' + static_cast<int>(v))
                                  + " is unconstrained; fixed at 0");
        result.positive_dimensional = true;
      }
    }
    if (k == 0) {
      Solution s;
      s.residual = system_residual(system, Point{});
      if (s.residual <= config.residual_tol) {
        s.multiplicity_hint = config.starts;
        classify(s);
        result.solutions.push_back(s);
      }
      return result;
    }
    if (system.equations.size() < k) {
      result.warnings.push_back("fewer equations than unknowns");
      result.positive_dimensional = true;
      return result;
    }

    Newton newton;
    newton.k = k;
    for (std::size_t i = 0; i < k; ++i) {
      auto const& eq = system.equations[i];
      newton.equations.push_back(compile(eq.lhs, unknowns, eq.rhs));
      std::vector<Compiled> row;
      for (Var v : unknowns) {
        row.push_back(compile(eq.lhs.derivative(v), unknowns, 0.0));
      }
      newton.jacobian.push_back(std::move(row));
    }

    auto expand = [&](std::array<cplx, 3> const& u) {
      Point p{};
      for (std::size_t v = 0; v < 3; ++v) {
        Var const rep = system.identification[v];
        auto it       = std::find(unknowns.begin(), unknowns.end(), rep);
        p[v]          = it == unknowns.end() ? cplx{0.0} : u[static_cast<std::size_t>(it - unknowns.begin())];
      }
      return p;
    };

    std::vector<std::optional<Point>> converged(config.starts);
    unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads          = std::min(threads, config.starts);

    auto worker = [&](unsigned first) {
      for (unsigned s = first; s < config.starts; s += threads) {
        auto u = newton.run(sample_start(config.rng_seed, s, k, config.sample_radius), config);
        if (!u) {
          continue;
        }
        Point const p = expand(*u);
        if (system_residual(system, p) <= config.residual_tol) {
          converged[s] = p;
        }
      }
    };
    if (threads <= 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker, t);
      }
      for (auto& th : pool) {
        th.join();
      }
    }

    // merge in start order
    for (auto const& p : converged) {
      if (!p) {
        continue;
      }
      ++result.converged_starts;
      double const r     = system_residual(system, *p);
      auto         match = std::find_if(result.solutions.begin(), result.solutions.end(), [&](Solution const& s) {
        return point_distance(s.point, *p) <= config.dedup_tol;
      });
      if (match != result.solutions.end()) {
        ++match->multiplicity_hint;
        if (r < match->residual) {
          match->point    = *p;
          match->residual = r;
        }
        continue;
      }
      Solution s;
      s.point             = *p;
      s.residual          = r;
      s.multiplicity_hint = 1;
      result.solutions.push_back(s);
    }
    // a point on a curve of solutions does not attract nearby starts back
    auto on_component = [&](Point const& p) {
      std::array<cplx, 3> u{};
      for (std::size_t i = 0; i < k; ++i) {
        u[i] = p[static_cast<std::size_t>(unknowns[i])];
      }
      for (std::size_t i = 0; i < k; ++i) {
        for (cplx dir : {cplx{1.0, 0.0}, cplx{0.0, 1.0}}) {
          auto start = u;
          start[i] += component_probe * dir;
          auto const back = newton.refine<long double>(start);
          if (system_residual(system, expand(back)) > config.residual_tol) {
            continue;
          }
          double dist = 0.0;
          for (std::size_t j = 0; j < k; ++j) {
            dist = std::max(dist, std::abs(back[j] - u[j]));
          }
          if (dist > 1e-2 * component_probe) {
            return true;
          }
        }
      }
      return false;
    };

    // refine each cluster once, then merge clusters that met
    std::vector<Solution> refined;
    for (auto s : result.solutions) {
      std::array<cplx, 3> u{};
      for (std::size_t i = 0; i < k; ++i) {
        u[i] = s.point[static_cast<std::size_t>(unknowns[i])];
      }
      Point const  p = expand(newton.refine<long double>(u));
      double const r = system_residual(system, p);
      if (r <= config.residual_tol) {
        s.point    = p;
        s.residual = r;
      }
      auto match = std::find_if(refined.begin(), refined.end(), [&](Solution const& t) {
        return point_distance(t.point, s.point) <= config.dedup_tol;
      });
      if (match == refined.end()) {
        refined.push_back(s);
      } else {
        match->multiplicity_hint += s.multiplicity_hint;
        if (s.residual < match->residual) {
          match->point    = s.point;
          match->residual = s.residual;
        }
      }
    }
    result.solutions = std::move(refined);
    for (auto& s : result.solutions) {
      classify(s);
      s.on_component = on_component(s.point);
      if (s.on_component) {
        result.positive_dimensional = true;
        continue;
      }
      std::array<cplx, 3> u{};
      for (std::size_t i = 0; i < k; ++i) {
        u[i] = s.point[static_cast<std::size_t>(unknowns[i])];
      }
      Point const  p = expand(newton.refine<__float128>(u));
      double const r = system_residual(system, p);
      if (r <= config.residual_tol) {
        s.point    = p;
        s.residual = r;
        classify(s);
      }
    }
    if (std::any_of(result.solutions.begin(), result.solutions.end(), [](Solution const& s) { return s.on_component; })) {
      result.warnings.push_back("some limit points lie on a positive dimensional component");
    }
    std::sort(result.solutions.begin(), result.solutions.end(), [](Solution const& a, Solution const& b) {
      if (a.residual != b.residual) {
        return a.residual < b.residual;
      }
      return point_less(a.point, b.point);
    });

    if (result.converged_starts >= 20
        && static_cast<double>(result.solutions.size()) > 0.25 * config.starts) {
      result.positive_dimensional = true;
      result.warnings.push_back("many distinct limit points; the solution set may be positive dimensional");
    }
    return result;
  }

  namespace {
    Point conjugate(Point p) {
      for (auto& t : p) {
        t = std::conj(t);
      }
      return p;
    }

    Point permute(Point const& p, std::array<Var, 3> const& perm) {
      Point out;
      for (std::size_t i = 0; i < 3; ++i) {
        out[i] = p[static_cast<std::size_t>(perm[i])];
      }
      return out;
    }

    // Images of p under the group generated by conjugation, orientation
    // flips and the given permutations.
    std::vector<Point> orbit(Point const& p, FilterOptions const& options) {
      std::vector<Point> out{p};
      auto add = [&](Point const& q) {
        for (auto const& r : out) {
          if (point_distance(r, q) <= options.match_tol * 1e-3) {
            return false;
          }
        }
        out.push_back(q);
        return true;
      };
      for (std::size_t i = 0; i < out.size(); ++i) {
        Point const q = out[i];
        add(conjugate(q));
        if (options.collapse_orientation) {
          add({-q[0], -q[1], q[2]});
          add({-q[0], q[1], -q[2]});
          add({q[0], -q[1], -q[2]});
        }
        for (auto const& perm : options.permutations) {
          add(permute(q, perm));
        }
      }
      return out;
    }

    // Representative order: larger imaginary parts first, then larger real
    // parts.
    bool representative_before(Point const& a, Point const& b, double tol) {
      for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(a[i].imag() - b[i].imag()) > tol) {
          return a[i].imag() > b[i].imag();
        }
      }
      for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(a[i].real() - b[i].real()) > tol) {
          return a[i].real() > b[i].real();
        }
      }
      return false;
    }
  }  // namespace

  FilterResult filter_candidates(std::vector<Solution> const& solutions, FilterOptions const& options) {
    FilterResult                   out;
    std::vector<Candidate>         kept;
    for (auto const& s : solutions) {
      if (s.real_triple) {
        ++out.dropped_real;
        continue;
      }
      if (std::abs(s.point[0] * s.point[0] - 4.0) <= degenerate_tol) {
        ++out.dropped_degenerate;
        continue;
      }
      if (s.on_component) {
        ++out.dropped_component;
        continue;
      }
      Candidate c;
      c.solution = s;
      if (options.relators) {
        auto const rep = build_representation(Parameters::from_rho(s.point[0], s.point[1], s.point[2]));
        c.relators     = verify_relators(rep, *options.relators, options.relator_tol);
        if (!c.relators->passed && options.enforce_relators) {
          ++out.dropped_relators;
          continue;
        }
      }
      kept.push_back(std::move(c));
    }

    std::vector<bool> absorbed(kept.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (absorbed[i]) {
        continue;
      }
      auto const         images = orbit(kept[i].solution.point, options);
      std::vector<std::size_t> members{i};
      for (std::size_t j = i + 1; j < kept.size(); ++j) {
        if (absorbed[j]) {
          continue;
        }
        for (auto const& q : images) {
          if (point_distance(q, kept[j].solution.point) <= options.match_tol) {
            members.push_back(j);
            break;
          }
        }
      }
      std::size_t best = i;
      bool        has_conjugate = false;
      Point const conj_i        = conjugate(kept[i].solution.point);
      for (std::size_t m : members) {
        absorbed[m] = true;
        if (m != i && point_distance(kept[m].solution.point, conj_i) <= options.match_tol) {
          has_conjugate = true;
        }
        if (representative_before(kept[m].solution.point, kept[best].solution.point, options.match_tol)) {
          best = m;
        }
      }
      Candidate rep      = kept[best];
      rep.conjugate_pair = has_conjugate;
      rep.orbit_size     = static_cast<unsigned>(members.size());
      for (std::size_t m : members) {
        if (m != best) {
          rep.solution.multiplicity_hint += kept[m].solution.multiplicity_hint;
        }
      }
      out.candidates.push_back(std::move(rep));
    }
    return out;
  }

  std::vector<ParametricRow> solve_parametric(CaseSpec const&                             family,
                                              std::vector<std::optional<unsigned>> const& values,
                                              SolverConfig const&                         config,
                                              bool apply_family_symmetry) {
    std::vector<ParametricRow> rows;
    for (auto const& v : values) {
      CaseSpec const spec = v ? family.instantiate(*v) : family.instantiate_infinite();
      ParametricRow  row;
      row.order  = v;
      row.system = assemble_system(spec);
      if (apply_family_symmetry) {
        row.system = apply_symmetry(row.system, spec.symmetry);
      }
      row.result = solve(row.system, config);
      rows.push_back(std::move(row));
    }
    return rows;
  }

}  // namespace halfturn
