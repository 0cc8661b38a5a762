#include "skewfactor/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewfactor/blocked.hpp"
#include "skewfactor/mmio.hpp"
#include "skewfactor/pivoted.hpp"
#include "skewfactor/unblocked.hpp"
#include "skewfactor/verify.hpp"

namespace skewfactor {

namespace {

const std::map<std::string, Variant>& algo_table() {
  static const std::map<std::string, Variant> t = {
      {"unb-right", Variant::unb_right},         {"unb-left", Variant::unb_left},
      {"unb-wimmer", Variant::unb_wimmer},       {"blk-right", Variant::blk_right},
      {"blk-left", Variant::blk_left},           {"blk-2b", Variant::blk_2b},
      {"blk-wimmer", Variant::blk_wimmer},       {"piv-unb-right", Variant::piv_unb_right},
      {"piv-unb-left", Variant::piv_unb_left},   {"piv-blk-right", Variant::piv_blk_right},
  };
  return t;
}

std::vector<std::string> algo_names() {
  std::vector<std::string> v;
  for (const auto& [k, _] : algo_table()) v.push_back(k);
  return v;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int threads_from_env() {
  const char* s = std::getenv("SKEWFACTOR_THREADS");
  if (!s) return 1;
  const int n = std::atoi(s);
  return n >= 1 ? n : 1;
}

}  // namespace

std::optional<Variant> parse_algo(const std::string& name) {
  const auto& t = algo_table();
  auto it = t.find(name);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

Factorization factor_with(Variant v, const DenseSkewMatrix& X, const BlockConfig& cfg,
                          KernelContext* ctx) {
  switch (v) {
    case Variant::unb_right: return ltlt_unb_right(X, {}, ctx);
    case Variant::unb_left: return ltlt_unb_left(X, {}, ctx);
    case Variant::unb_wimmer: return ltlt_unb_wimmer(X, ctx);
    case Variant::blk_right: return ltlt_blk_right(X, cfg, ctx);
    case Variant::blk_left: return ltlt_blk_left(X, cfg, ctx);
    case Variant::blk_2b: return ltlt_blk_right_2b(X, cfg, ctx);
    case Variant::blk_wimmer: return ltlt_blk_wimmer(X, cfg, ctx);
    case Variant::piv_unb_right: return ltlt_piv_unb_right(X, ctx);
    case Variant::piv_unb_left: return ltlt_piv_unb_left(X, {}, ctx);
    case Variant::piv_blk_right: return ltlt_piv_blk_right(X, cfg, ctx);
    case Variant::external: break;
  }
  throw std::invalid_argument("no driver for variant");
}

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"Skew-symmetric L T L^T factorization tool", "skewfactor"};
  app.require_subcommand(1);

  long long m = 0;
  std::uint64_t seed = 1;
  std::string in, out, out_l, out_t, out_p, lpath, tpath, ppath, csv;
  std::string algo = "unb-right", w_mode = "during", update_mode = "sandwiched";
  long long block = 32;
  int reps = 1;

  auto* gen = app.add_subcommand("gen", "Write a random skew-symmetric matrix");
  gen->add_option("--m", m, "Order")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--out", out, "Output file")->required();

  auto* fac = app.add_subcommand("factor", "Factor a matrix");
  fac->add_option("--in", in, "Input matrix")->required();
  fac->add_option("--algo", algo, "Algorithm")->required()->check(CLI::IsMember(algo_names()));
  fac->add_option("--block", block, "Block size")->check(CLI::PositiveNumber);
  fac->add_option("--w-mode", w_mode, "W accumulation")->check(CLI::IsMember({"during", "after"}));
  fac->add_option("--update-mode", update_mode, "Trailing update")
      ->check(CLI::IsMember({"sandwiched", "wimmer-w"}));
  fac->add_option("--out-l", out_l, "L output")->required();
  fac->add_option("--out-t", out_t, "T output")->required();
  fac->add_option("--out-p", out_p, "Pivot output");

  auto* ver = app.add_subcommand("verify", "Check a factorization against its matrix");
  ver->add_option("--in", in, "Original matrix")->required();
  ver->add_option("--l", lpath, "L file")->required();
  ver->add_option("--t", tpath, "T file")->required();
  ver->add_option("--p", ppath, "Pivot file");

  auto* ben = app.add_subcommand("bench", "Time a driver on random input");
  ben->add_option("--m", m, "Order")->required()->check(CLI::NonNegativeNumber);
  ben->add_option("--algo", algo, "Algorithm")->required()->check(CLI::IsMember(algo_names()));
  ben->add_option("--block", block, "Block size")->check(CLI::PositiveNumber);
  ben->add_option("--reps", reps, "Repetitions")->required()->check(CLI::PositiveNumber);
  ben->add_option("--csv", csv, "CSV output")->required();
  ben->add_option("--seed", seed, "Seed");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  BlockConfig cfg;
  cfg.b = static_cast<index_t>(block);
  cfg.w_mode = w_mode == "after" ? WMode::after_panel : WMode::during_panel;
  cfg.update_mode = update_mode == "wimmer-w" ? UpdateMode::wimmer_w : UpdateMode::sandwiched;

  try {
    if (*gen) {
      write_matrix_market(random_skew(static_cast<index_t>(m), seed), out);
      return 0;
    }
    if (*fac) {
      const DenseSkewMatrix X = read_matrix_market(in);
      const Variant v = *parse_algo(algo);
      const Factorization f = factor_with(v, X, cfg);
      write_unit_lower(f.L, out_l);
      write_tridiagonal(f.T, out_t);
      if (!out_p.empty()) {
        if (!f.p) throw UsageError("--out-p requires a pivoted algorithm");
        write_pivots(*f.p, out_p);
      }
      return 0;
    }
    if (*ver) {
      const DenseSkewMatrix X = read_matrix_market(in);
      Factorization f;
      f.L = read_unit_lower(lpath);
      f.T = read_tridiagonal(tpath);
      const index_t n = X.order();
      if (f.L.order() != n || f.T.order != n) throw IoError("factor orders do not match the matrix");
      if (!ppath.empty()) f.p = read_pivots(ppath, n > 0 ? n - 1 : 0);
      for (index_t i = 1; i < n; ++i)
        if (f.L.get(i, 0) != 0.0) f.first_col_mode = FirstColumnMode::given;
      const AuditReport a = audit_structure(f);
      const double res = a.pivots_valid ? residual(X, f) : std::numeric_limits<double>::infinity();
      const double threshold = 100.0 * static_cast<double>(std::max<index_t>(n, 1)) *
                               std::numeric_limits<double>::epsilon();
      nlohmann::json j;
      j["residual"] = res;
      j["threshold"] = threshold;
      j["unit_diag"] = a.unit_diag;
      j["canonical_col0"] = a.canonical_col0;
      j["tridiagonal"] = a.tridiagonal;
      j["bounded_l"] = a.bounded_l;
      j["pivots_valid"] = a.pivots_valid;
      std::cout << j.dump(2) << '\n';
      return res <= threshold ? 0 : 5;
    }
    if (*ben) {
      const Variant v = *parse_algo(algo);
      const index_t n = static_cast<index_t>(m);
      const DenseSkewMatrix X = random_skew(n, seed);
      struct Row {
        double seconds = 0;
        std::uint64_t flops = 0;
      };
      std::vector<Row> rows(static_cast<std::size_t>(reps));
      std::atomic<int> next{0};
      auto worker = [&] {
        for (int r; (r = next.fetch_add(1)) < reps;) {
          const DenseSkewMatrix copy = X;
          const auto t0 = std::chrono::steady_clock::now();
          const Factorization f = factor_with(v, copy, cfg);
          const auto t1 = std::chrono::steady_clock::now();
          rows[static_cast<std::size_t>(r)] = {std::chrono::duration<double>(t1 - t0).count(), f.flops};
        }
      };
      const int nt = std::min(threads_from_env(), reps);
      std::vector<std::thread> pool;
      for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();

      std::ofstream os(csv);
      if (!os) throw IoError("cannot write " + csv);
      os << "rep,m,algo,block,seconds,flops,flops_per_m3\n";
      const double m3 = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
      for (int r = 0; r < reps; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", row.seconds);
        os << r << ',' << n << ',' << algo << ',' << cfg.b << ',' << buf << ',' << row.flops << ',';
        std::snprintf(buf, sizeof buf, "%.9g", m3 > 0 ? static_cast<double>(row.flops) / m3 : 0.0);
        os << buf << '\n';
      }
      os.flush();
      if (!os) throw IoError("write failed: " + csv);
      return 0;
    }
  } catch (const ZeroPivot& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const ZeroLeadingColumn& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return 4;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << '\n';
    return 4;
  }
  return 2;
}

}  // namespace skewfactor
