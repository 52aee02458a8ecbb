#include "equisq/bigmath.hpp"
#include "equisq/core.hpp"
#include "equisq/flows.hpp"
#include "equisq/ngon.hpp"
#include "equisq/optimize.hpp"
#include "equisq/random.hpp"
#include "equisq/stream.hpp"
#include "equisq/transit.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

using namespace equisq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Output

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream& out, bool csv) const {
    if (csv) {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
      };
      line(header);
      for (const auto& r : rows) line(r);
      return;
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << "  ";
        out << std::setw(static_cast<int>(width[i])) << cells[i];
      }
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

std::string fixed(double v, int places) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << v;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

std::pair<int, int> parse_range(const std::string& text, std::pair<int, int> fallback) {
  if (text.empty()) return fallback;
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error("range must look like A..B or A");
  }
}

std::string join_partition(const std::vector<int>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "+" : "") + std::to_string(parts[i]);
  return out;
}

std::string cells_text(const PositionSet& s) {
  std::string out;
  for (Position p : s.cells()) out += "(" + std::to_string(p.col) + "," + std::to_string(p.row) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// tables

struct TablesArgs {
  std::string which;
  std::string range;
};

Table table_counts(std::pair<int, int> range) {
  if (range.first < 2) throw Error("counts need n >= 2");
  Table t{{"n", "log2_states", "log2_latin_lower"}, {}};
  for (int n = range.first; n <= range.second; ++n)
    t.rows.push_back({std::to_string(n), fixed(log2_state_count(n), 3), fixed(log2_ryser_bound(n), 3)});
  return t;
}

Table table_bias(std::pair<int, int> range) {
  if (range.first < 2) throw Error("bias needs n >= 2");
  Table t{{"n", "E", "B", "B_N"}, {}};
  for (int n = range.first; n <= range.second; ++n) {
    const auto b = stream::bias(n);
    t.rows.push_back({std::to_string(n), to_fixed(b.expected_colors, 2), to_fixed(b.missing_colors, 2),
                      to_fixed(b.missing_digits, 2)});
  }
  return t;
}

Table table_minrows(std::pair<int, int> range) {
  if (range.first < 2 || range.second > 64) throw Error("minrows supports 2 <= n <= 64");
  Table t{{"n", "r", "critical"}, {}};
  for (int n = range.first; n <= range.second; ++n) {
    const auto mr = optimize::minrows(n);
    std::string crit;
    for (std::size_t i = 0; i < mr.critical.size(); ++i) crit += (i ? " " : "") + join_partition(mr.critical[i]);
    t.rows.push_back({std::to_string(n), std::to_string(mr.rows), crit});
  }
  return t;
}

Table table_nbf(std::pair<int, int> range) {
  if (range.first < 1) throw Error("nbf needs b >= 1");
  Table t{{"b", "f", "n_bf"}, {}};
  for (int b = range.first; b <= range.second; ++b)
    for (int f = b; f <= range.second; ++f)
      t.rows.push_back({std::to_string(b), std::to_string(f), std::to_string(optimize::n_bf(b, f))});
  return t;
}

Table table_spaghetti(std::pair<int, int> range) {
  if (range.first < 2 || range.second > 80) throw Error("spaghetti supports 2 <= n <= 80");
  Table t{{"n", "s"}, {}};
  for (int n = range.first; n <= range.second; ++n)
    t.rows.push_back({std::to_string(n), std::to_string(optimize::spaghetti_boundary(n))});
  return t;
}

Table table_sh(std::pair<int, int> range) {
  if (range.first < 2) throw Error("sh needs n >= 2");
  Table t{{"n", "sh", "exact"}, {}};
  for (int n = range.first; n <= range.second; ++n) {
    std::string exact;
    if (n <= 12) {
      const auto [num, den] = avg_shuffles_exact(n);
      exact = num + "/" + den;
    }
    t.rows.push_back({std::to_string(n), fixed(avg_shuffles(n), 5), exact});
  }
  return t;
}

Table table_dn(std::pair<int, int> range) {
  if (range.first < 2) throw Error("dn needs n >= 2");
  Table t{{"n", "d_n", "compile_budget"}, {}};
  for (int n = range.first; n <= range.second; ++n)
    t.rows.push_back({std::to_string(n), std::to_string(shuffle_lower_bound(n)),
                      std::to_string(transit::bounded_shuffle_budget(n))});
  return t;
}

int cmd_tables(const TablesArgs& a, bool csv) {
  Table t;
  if (a.which == "counts") t = table_counts(parse_range(a.range, {8, 32}));
  else if (a.which == "bias") t = table_bias(parse_range(a.range, {2, 33}));
  else if (a.which == "minrows") t = table_minrows(parse_range(a.range, {8, 50}));
  else if (a.which == "nbf") t = table_nbf(parse_range(a.range, {2, 21}));
  else if (a.which == "spaghetti") t = table_spaghetti(parse_range(a.range, {8, 50}));
  else if (a.which == "sh") t = table_sh(parse_range(a.range, {2, 20}));
  else if (a.which == "dn") t = table_dn(parse_range(a.range, {2, 40}));
  else throw Error("unknown table " + a.which);
  t.print(std::cout, csv);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

enum class Verdict { Pass, Fail, Unknown };

struct CaseResult {
  Verdict verdict = Verdict::Pass;
  std::string witness;
  long long metric = 0;
};

struct CampaignSummary {
  long long cases = 0;
  long long passed = 0;
  long long failed = 0;
  long long unknown = 0;
  long long max_metric = 0;
  std::vector<std::pair<long long, std::string>> witnesses;
};

constexpr std::size_t kMaxWitnesses = 10;

// Runs run_case(index) for every index, splitting indices round-robin over
// jobs threads. The summary does not depend on the number of jobs.
CampaignSummary run_campaign(long long total, int jobs, const std::function<CaseResult(long long)>& run_case) {
  CampaignSummary sum;
  std::mutex lock;
  auto worker = [&](int w) {
    CampaignSummary local;
    for (long long i = w; i < total; i += jobs) {
      CaseResult r;
      try {
        r = run_case(i);
      } catch (const optimize::BudgetExceeded& e) {
        r = {Verdict::Unknown, e.what(), 0};
      }
      ++local.cases;
      local.max_metric = std::max(local.max_metric, r.metric);
      if (r.verdict == Verdict::Pass) ++local.passed;
      else if (r.verdict == Verdict::Fail) ++local.failed;
      else ++local.unknown;
      if (r.verdict != Verdict::Pass) local.witnesses.emplace_back(i, r.witness);
    }
    std::lock_guard guard(lock);
    sum.cases += local.cases;
    sum.passed += local.passed;
    sum.failed += local.failed;
    sum.unknown += local.unknown;
    sum.max_metric = std::max(sum.max_metric, local.max_metric);
    for (auto& wit : local.witnesses) sum.witnesses.push_back(std::move(wit));
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < jobs; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& t : pool) t.join();
  std::sort(sum.witnesses.begin(), sum.witnesses.end());
  if (sum.witnesses.size() > kMaxWitnesses) sum.witnesses.resize(kMaxWitnesses);
  return sum;
}

// k-subset of the n x n square with the given lexicographic index.
PositionSet unrank_subset(int n, int k, long long index) {
  const int cells = n * n;
  std::vector<Position> out;
  int next = 0;
  for (int slot = 0; slot < k; ++slot)
    for (int c = next; c < cells; ++c) {
      const auto below = static_cast<long long>(binomial(cells - c - 1, k - slot - 1));
      if (index < below) {
        out.push_back(position_of(c, n));
        next = c + 1;
        break;
      }
      index -= below;
    }
  return PositionSet(n, out);
}

struct VerifyArgs {
  std::string kind;
  int n = 0;
  long long samples = 1000;
  std::uint64_t seed = 1;
  bool seed_given = false;
  bool exhaustive = false;
  long long budget = 0;
  int jobs = 1;
  int length = 8;
};

optimize::KeyResultOptions key_options(const VerifyArgs& a) {
  optimize::KeyResultOptions o;
  if (a.budget > 0) o.node_budget = a.budget;
  return o;
}

CaseResult verify_key_result(const PositionSet& s, const optimize::KeyResultOptions& opts) {
  const auto seq = optimize::shuffle_to_hgraph(s, opts);
  if (seq && is_hgraph(apply(*seq, s))) return {};
  return {Verdict::Fail, cells_text(s), 0};
}

CaseResult verify_hmove_only(const PositionSet& s, long long budget) {
  const auto r = optimize::rows_apart(s, budget > 0 ? budget : ngon::kDefaultFamilyBudget);
  if (r.status == ngon::SearchStatus::Found) {
    if (!is_hgraph(apply(*r.move, s))) throw VerificationFailure("rows_apart returned a move that misses: " + cells_text(s));
    return {};
  }
  if (r.status == ngon::SearchStatus::Unknown) return {Verdict::Unknown, cells_text(s), 0};
  return {Verdict::Fail, cells_text(s), 0};
}

bool is_latin_cells(const SquareState& s, const std::vector<Position>& cells) {
  std::set<int> digits;
  for (Position c : cells) digits.insert(s.digit(c));
  return digits.size() == static_cast<std::size_t>(s.n()) && cells.size() == digits.size();
}

// Part labels with sizes at most k summing to n k - l.
std::vector<int> random_part_labels(int n, int k, int l, Rng& rng) {
  std::vector<int> size(static_cast<std::size_t>(n), k);
  for (int i = 0; i < l; ++i) --size[uniform_below(rng, static_cast<std::uint64_t>(n))];
  std::vector<int> labels;
  for (int p = 0; p < n; ++p) labels.insert(labels.end(), static_cast<std::size_t>(size[p]), p);
  shuffle_in_place(labels, rng);
  return labels;
}

CaseResult verify_flows(int n, Rng& rng) {
  flows::TransversalInstance inst;
  inst.parts = n;
  inst.k = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  inst.l = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(inst.k)));
  inst.u_part = random_part_labels(n, inst.k, inst.l, rng);
  inst.w_part = random_part_labels(n, inst.k, inst.l, rng);
  std::vector<int> avoid(inst.u_part.size());
  std::iota(avoid.begin(), avoid.end(), 0);
  shuffle_in_place(avoid, rng);
  avoid.resize(static_cast<std::size_t>(inst.k - inst.l - 1));
  inst.avoid = avoid;
  const auto tr = flows::common_transversal(inst);
  std::set<int> ws;
  for (int i = 0; i < n; ++i) {
    const int e = tr.elements[i];
    if (e < 0 || inst.u_part[e] != i || std::find(avoid.begin(), avoid.end(), e) != avoid.end())
      return {Verdict::Fail, "transversal invalid", 0};
    ws.insert(inst.w_part[e]);
  }
  if (tr.flow != n || ws.size() != static_cast<std::size_t>(n)) return {Verdict::Fail, "transversal invalid", 0};

  const SquareState p = random_state(n, rng);
  const SquareState q = random_state(n, rng);
  std::vector<Position> all;
  for (int r = 0; r < n * n; ++r) all.push_back(position_of(r, n));
  const auto parts = flows::common_latin_partition(p, q, PositionSet(n, all), n);
  std::set<int> seen;
  for (const auto& part : parts) {
    if (!is_latin_cells(p, part) || !is_latin_cells(q, part)) return {Verdict::Fail, "common partition not latin", 0};
    for (Position c : part) seen.insert(rank_of(c, n));
  }
  if (seen.size() != static_cast<std::size_t>(n * n)) return {Verdict::Fail, "common partition misses cells", 0};
  for (Axis axis : {Axis::H, Axis::V}) {
    const auto graphs = flows::latin_graph_partition(p, axis);
    std::set<int> covered;
    for (const auto& g : graphs) {
      const bool shape = axis == Axis::H ? is_hgraph(g.as_set()) : is_vgraph(g.as_set());
      if (!shape || !is_latin_cells(p, g.cells())) return {Verdict::Fail, "graph partition invalid", 0};
      for (Position c : g.cells()) covered.insert(rank_of(c, n));
    }
    if (covered.size() != static_cast<std::size_t>(n * n)) return {Verdict::Fail, "graph partition misses cells", 0};
  }
  return {};
}

CaseResult verify_forcing(int n, int length, Rng& rng, const optimize::KeyResultOptions& opts) {
  const SquareState s = random_state(n, rng);
  std::vector<stream::BaseNNumber> inputs;
  std::vector<stream::BaseNNumber> targets;
  for (int i = 0; i < length; ++i) {
    inputs.push_back(stream::random_number(n, rng));
    targets.push_back(stream::random_number(n, rng));
  }
  const MoveSequence schedule = stream::force_run(s, inputs, targets, opts);
  stream::ShuffleSource src = stream::ShuffleSource::schedule(schedule);
  const auto run = stream::standard_mode_run(s, inputs, src);
  const bool ok = run.outputs == targets && schedule.size() == static_cast<std::size_t>(4 * length);
  return {ok ? Verdict::Pass : Verdict::Fail, ok ? "" : format_square(s), static_cast<long long>(schedule.size())};
}

CaseResult verify_compile(int n, Rng& rng, const optimize::KeyResultOptions& opts) {
  const SquareState p = random_state(n, rng);
  const SquareState q = random_state(n, rng);
  const MoveSequence seq = transit::bounded_compile(p, q, opts);
  const bool ok = p.apply(seq) == q && seq.half_shuffles() <= 2 * transit::bounded_shuffle_budget(n);
  return {ok ? Verdict::Pass : Verdict::Fail, ok ? "" : format_square(p) + "->\n" + format_square(q),
          seq.half_shuffles()};
}

int cmd_verify(const VerifyArgs& a, bool csv) {
  require_size(a.n);
  const bool randomized = !a.exhaustive && a.kind != "three-cycle";
  if (randomized && !a.seed_given) throw Error("randomized campaigns need --seed");
  const auto opts = key_options(a);
  const int jobs = std::max(1, a.jobs);
  long long total = a.samples;
  std::function<CaseResult(long long)> run_case;
  const int n = a.n;

  if (a.kind == "key-result" || a.kind == "hmove-only") {
    const bool key = a.kind == "key-result";
    std::function<PositionSet(long long)> make_set;
    if (a.exhaustive) {
      if (n > 7) throw Error("exhaustive set campaigns support n <= 7");
      total = static_cast<long long>(binomial(n * n, n));
      make_set = [n](long long i) { return unrank_subset(n, n, i); };
    } else {
      make_set = [n, seed = a.seed](long long i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        return random_position_set(n, n, rng);
      };
    }
    run_case = [=, budget = a.budget](long long i) {
      const PositionSet s = make_set(i);
      return key ? verify_key_result(s, opts) : verify_hmove_only(s, budget);
    };
  } else if (a.kind == "three-cycle") {
    if (n < 3) throw Error("three-cycle gadget needs n >= 3");
    total = static_cast<long long>(n) * (n - 1);
    run_case = [n](long long i) {
      const int k = static_cast<int>(i % n);
      const int r = 1 + static_cast<int>(i / n);
      Permutation want = identity_permutation(n * n);
      const int c = k + n * r;
      want[0] = 1;
      want[1] = c;
      want[c] = 0;
      const bool ok = transit::three_cycle_moves(k, r, n).permutation() == want;
      return CaseResult{ok ? Verdict::Pass : Verdict::Fail, "k=" + std::to_string(k) + " r=" + std::to_string(r), 0};
    };
  } else if (a.kind == "flows") {
    run_case = [n, seed = a.seed](long long i) {
      Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
      return verify_flows(n, rng);
    };
  } else if (a.kind == "forcing") {
    run_case = [n, seed = a.seed, length = a.length, opts](long long i) {
      Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
      return verify_forcing(n, length, rng, opts);
    };
  } else if (a.kind == "compile") {
    run_case = [n, seed = a.seed, opts](long long i) {
      Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
      return verify_compile(n, rng, opts);
    };
  } else {
    throw Error("unknown verify kind " + a.kind);
  }

  const CampaignSummary sum = run_campaign(total, jobs, run_case);
  Table t{{"kind", "n", "cases", "passed", "failed", "unknown", "max_length"}, {}};
  t.rows.push_back({a.kind, std::to_string(n), std::to_string(sum.cases), std::to_string(sum.passed),
                    std::to_string(sum.failed), std::to_string(sum.unknown), std::to_string(sum.max_metric)});
  t.print(std::cout, csv);
  for (const auto& [index, text] : sum.witnesses) std::cout << "# case " << index << ": " << text << '\n';
  if (sum.unknown > 0) std::cout << "# partial: " << sum.unknown << " cases exceeded the search budget\n";
  // H-move-only misses are the quantity being counted, not a breach.
  if (a.kind != "hmove-only" && sum.failed > 0) return kExitVerify;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// solve / stream / force

struct SolveArgs {
  std::string from;
  std::string to;
  std::string out;
  bool naive = false;
  bool economize = false;
};

int cmd_solve(const SolveArgs& a) {
  const SquareState p = parse_square(read_file(a.from));
  const SquareState q = parse_square(read_file(a.to));
  if (p.n() != q.n()) throw Error("squares differ in size");
  const MoveSequence seq = a.naive ? transit::naive_compile(p, q) : transit::bounded_compile(p, q, {}, a.economize);
  write_file(a.out, format_moves(seq));
  const MoveSequence replay = parse_moves(read_file(a.out));
  if (p.apply(replay) != q) throw VerificationFailure("written move file does not reproduce the target");
  const int n = p.n();
  std::cout << "half_shuffles " << seq.half_shuffles() << '\n'
            << "shuffles " << format_shuffles(seq.half_shuffles()) << '\n'
            << "budget " << transit::bounded_shuffle_budget(n) << '\n'
            << "lower_bound " << shuffle_lower_bound(n) << '\n';
  return kExitOk;
}

std::vector<stream::BaseNNumber> read_numbers(const std::string& path, int n, bool digits) {
  std::istringstream in(read_file(path));
  std::vector<stream::BaseNNumber> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(stream::BaseNNumber::parse(n, line, digits));
  }
  return out;
}

std::string format_numbers(const std::vector<stream::BaseNNumber>& xs, bool digits) {
  std::string out;
  for (const auto& x : xs) out += (digits ? x.to_digit_string() : x.to_decimal()) + "\n";
  return out;
}

struct StreamArgs {
  std::string square;
  std::string inputs;
  std::string out;
  std::string schedule;
  std::string final_state;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool digits = false;
};

int cmd_stream(const StreamArgs& a) {
  const SquareState s = parse_square(read_file(a.square));
  const auto inputs = read_numbers(a.inputs, s.n(), a.digits);
  if (a.schedule.empty() == !a.seed_given) throw Error("give exactly one of --seed and --schedule");
  auto make_source = [&] {
    return a.schedule.empty() ? stream::ShuffleSource::seeded(s.n(), a.seed)
                              : stream::ShuffleSource::schedule(parse_moves(read_file(a.schedule)));
  };
  auto src = make_source();
  const auto run = stream::standard_mode_run(s, inputs, src);
  const std::string text = format_numbers(run.outputs, a.digits);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
    if (read_numbers(a.out, s.n(), a.digits) != run.outputs) throw VerificationFailure("output file does not read back");
  }
  if (!a.final_state.empty()) {
    write_file(a.final_state, format_square(run.final_state));
    if (parse_square(read_file(a.final_state)) != run.final_state)
      throw VerificationFailure("final state file does not read back");
  }
  return kExitOk;
}

struct ForceArgs {
  std::string square;
  std::string inputs;
  std::string targets;
  std::string out;
  bool digits = false;
};

int cmd_force(const ForceArgs& a) {
  const SquareState s = parse_square(read_file(a.square));
  const auto inputs = read_numbers(a.inputs, s.n(), a.digits);
  const auto targets = read_numbers(a.targets, s.n(), a.digits);
  const MoveSequence schedule = stream::force_run(s, inputs, targets);
  write_file(a.out, format_moves(schedule));
  auto src = stream::ShuffleSource::schedule(parse_moves(read_file(a.out)));
  if (stream::standard_mode_run(s, inputs, src).outputs != targets)
    throw VerificationFailure("written schedule does not force the targets");
  std::cout << "shuffles " << schedule.size() / 2 << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// ngon / wavy / flows

struct NgonArgs {
  int n = 0;
  std::vector<std::string> sets;
  int cyclotomic = 0;
  long long budget = 0;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw Error("bad integer");
    } catch (const std::exception&) {
      throw Error("bad integer list: " + text);
    }
  }
  return out;
}

int cmd_ngon(const NgonArgs& a) {
  if (a.cyclotomic > 0) {
    std::cout << ngon::cyclotomic(a.cyclotomic).to_string() << '\n';
    if (a.sets.empty()) return kExitOk;
  }
  if (a.n < 1) throw Error("ngon needs -n");
  if (a.sets.empty()) throw Error("ngon needs --set or --cyclotomic");
  std::vector<ngon::NGonSet> family;
  std::vector<int> sizes;
  for (const auto& text : a.sets) {
    const auto members = parse_int_list(text);
    family.emplace_back(a.n, members);
    sizes.push_back(static_cast<int>(family.back().size()));
  }
  const auto res = ngon::rotate_apart_family(family, a.budget > 0 ? a.budget : ngon::kDefaultFamilyBudget);
  std::cout << "status " << ngon::to_string(res.status) << '\n';
  std::cout << "guaranteed " << (ngon::family_separation_guarantee(sizes, a.n) ? "yes" : "no") << '\n';
  if (res.status == ngon::SearchStatus::Found) {
    std::cout << "rotations";
    for (int v : res.rotations) std::cout << ' ' << v;
    std::cout << '\n';
    std::set<int> used;
    std::size_t total = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      const ngon::NGonSet moved = family[i].shifted(res.rotations[i]);
      used.insert(moved.members().begin(), moved.members().end());
      total += family[i].size();
    }
    if (used.size() != total) throw VerificationFailure("rotated sets overlap");
  }
  std::cout << "nodes " << res.nodes << '\n';
  return kExitOk;
}

struct WavyArgs {
  int n = 0;
  std::string square;
  std::string checkpoint;
  long long budget = 0;
};

int cmd_wavy(const WavyArgs& a, bool csv) {
  if (!a.square.empty()) {
    const SquareState s = parse_square(read_file(a.square));
    const auto w = flows::wavy_latin(s, a.budget > 0 ? a.budget : flows::kDefaultWavyBudget);
    std::cout << "status " << ngon::to_string(w.status) << '\n';
    if (w.status == ngon::SearchStatus::Found) {
      // Graph labels laid out like the square text.
      for (const auto* labels : {&w.hgraph_of, &w.vgraph_of}) {
        for (int row = s.n() - 1; row >= 0; --row) {
          for (int col = s.n() - 1; col >= 0; --col)
            std::cout << (*labels)[rank_of({col, row}, s.n())] << (col ? " " : "\n");
        }
        std::cout << '\n';
      }
    }
    return kExitOk;
  }
  if (a.n < 2 || a.n > 4) throw Error("census supports 2 <= n <= 4");
  const auto c = flows::wavy_census(a.n, a.checkpoint, [](long long done, long long total) {
    std::cerr << "\rplacements " << done << " / " << total << std::flush;
  });
  std::cerr << '\n';
  Table t{{"n", "states", "types", "non_wavy"}, {}};
  t.rows.push_back({std::to_string(c.n), std::to_string(c.states), std::to_string(c.types), std::to_string(c.non_wavy)});
  t.print(std::cout, csv);
  for (const auto& type : c.non_wavy_types) {
    std::cout << "# non-wavy:";
    for (int d : type) std::cout << ' ' << d;
    std::cout << '\n';
  }
  return kExitOk;
}

struct FlowsArgs {
  std::string square;
  std::string axis = "H";
};

int cmd_flows(const FlowsArgs& a) {
  const SquareState s = parse_square(read_file(a.square));
  if (a.axis != "H" && a.axis != "V") throw Error("axis must be H or V");
  const Axis axis = a.axis == "H" ? Axis::H : Axis::V;
  const auto graphs = flows::latin_graph_partition(s, axis);
  std::set<int> covered;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& g = graphs[i];
    const bool shape = axis == Axis::H ? is_hgraph(g.as_set()) : is_vgraph(g.as_set());
    if (!shape || !is_latin_cells(s, g.cells())) throw VerificationFailure("graph " + std::to_string(i) + " is invalid");
    for (Position c : g.cells()) covered.insert(rank_of(c, s.n()));
    std::cout << i << ' ' << cells_text(g.as_set()) << '\n';
  }
  if (covered.size() != static_cast<std::size_t>(s.n() * s.n())) throw VerificationFailure("graphs do not cover");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equi-n-square toolkit"};
  app.require_subcommand(1);
  std::string format = "csv";
  app.add_option("--format", format, "table output")->check(CLI::IsMember({"csv", "text"}));

  TablesArgs tables;
  auto* tables_cmd = app.add_subcommand("tables", "print computed tables");
  tables_cmd->add_option("which", tables.which, "counts | bias | minrows | nbf | spaghetti | sh | dn")
      ->required()
      ->check(CLI::IsMember({"counts", "bias", "minrows", "nbf", "spaghetti", "sh", "dn"}));
  tables_cmd->add_option("range", tables.range, "A..B");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification campaign");
  verify_cmd->add_option("kind", verify.kind)
      ->required()
      ->check(CLI::IsMember({"key-result", "hmove-only", "three-cycle", "flows", "forcing", "compile"}));
  verify_cmd->add_option("-n", verify.n)->required()->check(CLI::Range(2, 64));
  verify_cmd->add_option("--samples", verify.samples)->check(CLI::PositiveNumber);
  auto* verify_seed = verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_flag("--exhaustive", verify.exhaustive);
  verify_cmd->add_option("--budget", verify.budget, "search node budget")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--jobs", verify.jobs)->check(CLI::Range(1, 256));
  verify_cmd->add_option("--length", verify.length, "inputs per forcing case")->check(CLI::Range(1, 10000));

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "compile a move sequence between two squares");
  solve_cmd->add_option("from", solve.from)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("to", solve.to)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("-o,--out", solve.out)->required();
  solve_cmd->add_flag("--naive", solve.naive);
  solve_cmd->add_flag("--economize", solve.economize, "shorter cycle steps for n <= 5")->excludes("--naive");

  StreamArgs stream_args;
  auto* stream_cmd = app.add_subcommand("stream", "run the square in standard mode");
  stream_cmd->add_option("square", stream_args.square)->required()->check(CLI::ExistingFile);
  stream_cmd->add_option("inputs", stream_args.inputs)->required()->check(CLI::ExistingFile);
  stream_cmd->add_option("-o,--out", stream_args.out);
  stream_cmd->add_option("--schedule", stream_args.schedule)->check(CLI::ExistingFile);
  auto* stream_seed = stream_cmd->add_option("--seed", stream_args.seed);
  stream_cmd->add_option("--final-state", stream_args.final_state);
  stream_cmd->add_flag("--digits", stream_args.digits, "numbers as base-n digit strings");

  ForceArgs force;
  auto* force_cmd = app.add_subcommand("force", "build a schedule forcing target outputs");
  force_cmd->add_option("square", force.square)->required()->check(CLI::ExistingFile);
  force_cmd->add_option("inputs", force.inputs)->required()->check(CLI::ExistingFile);
  force_cmd->add_option("targets", force.targets)->required()->check(CLI::ExistingFile);
  force_cmd->add_option("-o,--out", force.out)->required();
  force_cmd->add_flag("--digits", force.digits);

  NgonArgs ngon_args;
  auto* ngon_cmd = app.add_subcommand("ngon", "rotate subsets of Z_n apart");
  ngon_cmd->add_option("-n", ngon_args.n)->check(CLI::Range(1, ngon::kMaxModulus));
  ngon_cmd->add_option("--set", ngon_args.sets, "comma-separated residues; repeat per set");
  ngon_cmd->add_option("--cyclotomic", ngon_args.cyclotomic)->check(CLI::Range(1, 100000));
  ngon_cmd->add_option("--budget", ngon_args.budget)->check(CLI::PositiveNumber);

  WavyArgs wavy;
  auto* wavy_cmd = app.add_subcommand("wavy", "wavy-latin check or type census");
  wavy_cmd->add_option("-n", wavy.n);
  wavy_cmd->add_option("--square", wavy.square)->check(CLI::ExistingFile);
  wavy_cmd->add_option("--checkpoint", wavy.checkpoint);
  wavy_cmd->add_option("--budget", wavy.budget)->check(CLI::PositiveNumber);

  FlowsArgs flows_args;
  auto* flows_cmd = app.add_subcommand("flows", "partition a square into latin graphs");
  flows_cmd->add_option("square", flows_args.square)->required()->check(CLI::ExistingFile);
  flows_cmd->add_option("--axis", flows_args.axis)->check(CLI::IsMember({"H", "V"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  verify.seed_given = verify_seed->count() > 0;
  stream_args.seed_given = stream_seed->count() > 0;
  const bool csv = format == "csv";

  try {
    if (*tables_cmd) return cmd_tables(tables, csv);
    if (*verify_cmd) return cmd_verify(verify, csv);
    if (*solve_cmd) return cmd_solve(solve);
    if (*stream_cmd) return cmd_stream(stream_args);
    if (*force_cmd) return cmd_force(force);
    if (*ngon_cmd) return cmd_ngon(ngon_args);
    if (*wavy_cmd) return cmd_wavy(wavy, csv);
    if (*flows_cmd) return cmd_flows(flows_args);
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
