#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sk/classify.hpp"
#include "sk/input.hpp"

namespace fs = std::filesystem;
using namespace sk;

namespace {

enum Exit { kOk = 0, kParse = 1, kViolation = 2, kInconclusive = 3 };

struct Options {
  std::string input;
  int hdeg = -1;
  int deg_bound = -1;
  int arity = 6;
  long characteristic = -1;
  std::string module_file;
  std::string out_dir;
  std::string format = "csv";
};

struct Output {
  std::string name;  // file name under --out
  std::string text;
};

struct Result {
  int code = kOk;
  std::string summary;  // stdout
  std::vector<Output> files;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

int worst(int a, int b) {
  if (a == kViolation || b == kViolation) return kViolation;
  return std::max(a, b);
}

int hdeg_or(const Options& o, int fallback) { return o.hdeg >= 0 ? o.hdeg : fallback; }
int deg_bound_or(const Options& o, const RingSpec& spec, int N) {
  return o.deg_bound >= 0 ? o.deg_bound : spec.default_ideg_bound(N);
}

Result cmd_resolve(const Options& o, const InputSpec& in) {
  RingSpec spec = in.spec();
  int N = hdeg_or(o, static_cast<int>(in.ring->nvars()));
  int D = deg_bound_or(o, spec, N);
  ChainComplex A = minimal_free_resolution(spec, N, D);
  Result r;
  std::ostringstream os;
  os << "betti totals: " << join(A.ranks()) << "\n";
  if (A.bounds.truncated) {
    os << "truncated at hdeg " << N << ", internal degree " << D << "\n";
    r.code = kInconclusive;
  }
  bool csv = o.format == "csv";
  std::string body = csv ? BettiTable::of(A).csv() : dump_resolution(A);
  os << body;
  r.summary = os.str();
  r.files.push_back({csv ? "betti.csv" : "resolution.txt", body});
  return r;
}

Result cmd_ainf(const Options& o, const InputSpec& in) {
  RingSpec spec = in.spec();
  int n = static_cast<int>(in.ring->nvars());
  ChainComplex A = minimal_free_resolution(spec, n, deg_bound_or(o, spec, n));
  AinfStructure s = transfer_ainf_algebra(A, o.arity, -1);
  auto rep = verify_stasheff(s);
  auto fc = formality_certificate(s);
  Result r;
  std::ostringstream os;
  os << "resolution: " << join(A.ranks()) << "\n";
  os << "stasheff: " << (rep.ok ? "ok" : "violated") << " (" << rep.checked << " identities through arity " << o.arity
     << ")\n";
  if (!rep.ok) os << "violation: " << rep.violation << "\n";
  os << "formality: "
     << (fc.certified ? "certified" : "not certified (first nonzero arity " + std::to_string(fc.first_nonzero_arity) + ")")
     << "\n";
  if (!rep.ok) r.code = kViolation;
  std::string ser = serialize_ainf(s);
  if (o.out_dir.empty()) os << "---\n" << ser;
  r.summary = os.str();
  r.files.push_back({"ainf.txt", ser});
  return r;
}

Result cmd_verify(const Options& o) {
  AinfStructure s;
  try {
    s = parse_ainf(read_file(o.input));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0, 0);
  }
  auto rep = verify_stasheff(s, o.arity > 0 ? std::min(o.arity, s.arity) : s.arity);
  Result r;
  std::ostringstream os;
  os << "stasheff: " << (rep.ok ? "ok" : "violated") << " (" << rep.checked << " identities through arity " << s.arity
     << ")\n";
  if (!rep.ok) {
    os << "violation: " << rep.violation << "\n";
    r.code = kViolation;
  }
  r.summary = os.str();
  r.files.push_back({"verify.txt", r.summary});
  return r;
}

Result cmd_priddy(const Options& o, const InputSpec& in) {
  RingSpec spec = in.spec();
  int N = hdeg_or(o, 6);
  std::optional<RingSpec> module = in.module_spec();
  if (!o.module_file.empty()) {
    InputSpec with = in;
    with.module = parse_module_block(read_file(o.module_file), in.ring);
    with.has_module = true;
    module = with.module_spec();
  }
  PriddyResult pr = priddy_resolution(spec, module ? &*module : nullptr, N);
  Result r;
  std::ostringstream os;
  os << "module: " << (module ? "Q/J" : "k") << "\n";
  os << "presentation: " << pr.presentation.recipe << "\n";
  os << "totals: " << join(pr.totals()) << " (truncated at hdeg " << N << ")\n";
  os << "minimal: " << (pr.minimal ? "yes" : "no") << "\n";
  os << "acyclic: " << (pr.acyclic ? "yes" : "no") << " in hdeg 1.." << N - 1 << "\n";
  // Minimality is only forced for the residue field.
  if ((!module && !pr.minimal) || !pr.acyclic) {
    os << pr.report;
    r.code = kViolation;
  }
  std::string body = dump_twisted(pr.twisted, o.format == "csv");
  r.summary = os.str();
  r.files.push_back({o.format == "csv" ? "priddy.csv" : "priddy.txt", body});
  return r;
}

Result cmd_shamash(const Options& o, const InputSpec& in) {
  RingSpec spec = in.spec();
  int N = hdeg_or(o, 6);
  auto p = shamash_pipeline(spec, N, std::max(1, (N + 1) / 2));
  Result r;
  std::ostringstream os;
  os << "shamash totals: " << join(p.shamash.complex.ranks()) << " (truncated at hdeg " << N << ")\n";
  os << "priddy totals: " << join(p.twisted.complex.ranks()) << "\n";
  os << "higher homotopies: " << (p.identities.ok ? "ok" : "violated") << " (" << p.identities.checked
     << " identities, |alpha| <= " << p.homotopies.bound << ")\n";
  if (!p.identities.ok) os << "violation: " << p.identities.violation << "\n";
  os << "comparison: " << (p.comparison.ok ? "ok" : "mismatch") << " (" << p.comparison.entries << " entries)\n";
  if (!p.comparison.ok) os << "mismatch: " << p.comparison.mismatch << "\n";
  if (!p.identities.ok || !p.comparison.ok) r.code = kViolation;
  r.summary = os.str();
  r.files.push_back({"shamash.txt", o.format == "csv" ? BettiTable::of(p.shamash.complex).csv()
                                                       : dump_resolution(p.shamash.complex)});
  return r;
}

int verdict_code(CKVerdict v) {
  return v == CKVerdict::Certified ? kOk : v == CKVerdict::Refuted ? kViolation : kInconclusive;
}

Result cmd_classify(const Options& o, const InputSpec& in) {
  RingSpec spec = in.spec();
  int N = hdeg_or(o, 6);
  auto rep = cohen_koszul_report(spec, N);
  Result r;
  std::ostringstream os;
  int pd = minimal_free_resolution(spec, static_cast<int>(spec.ring->nvars()),
                                   spec.default_ideg_bound(static_cast<int>(spec.ring->nvars())))
               .max_hdeg();
  os << "class: " << (rep.tor_class ? rep.tor_class->name() : "n/a (codepth " + std::to_string(pd) + ")")
     << "; cohen_koszul: " << ck_name(rep.verdict) << "\n";
  if (rep.tor_class) os << "tor: " << rep.tor_class->evidence << "\n";
  if (auto ob = golod_product_obstruction(koszul_homology_algebra(spec)))
    os << "golod: not-golod (product on Tor: " << *ob << ")\n";
  else
    os << "golod: " << golod_test(spec, N).str() << "\n";
  if (rep.dominance) {
    auto ms = spec.monomial_generators();
    os << "dominance: " << rep.dominance->str(*spec.ring, ms) << "\n";
    auto taylor = verify_complex(taylor_resolution(spec.ring, ms).algebra.complex);
    os << "taylor: " << (taylor.minimal ? "minimal" : "not minimal") << "\n";
  }
  try {
    auto agg = almost_golod_gorenstein_test(spec, N);
    os << "almost_golod_gorenstein: " << (agg.verdict() ? "yes" : "no")
       << (agg.routes_agree() ? "" : " [routes disagree]") << "\n";
    if (!agg.routes_agree()) r.code = kViolation;
  } catch (const UnsupportedInput&) {
    os << "almost_golod_gorenstein: n/a (not Gorenstein)\n";
  }
  os << "route: " << rep.route << "\n";
  r.code = worst(r.code, verdict_code(rep.verdict));
  r.summary = os.str();
  r.files.push_back({"classify.txt", r.summary});
  return r;
}

Result cmd_report(const Options& o, const InputSpec& in) {
  auto rep = cohen_koszul_report(in.spec(), hdeg_or(o, 6));
  Result r;
  r.code = verdict_code(rep.verdict);
  r.summary = rep.text();
  r.files.push_back({"report.txt", r.summary});
  return r;
}

Result cmd_poincare(const Options& o, const InputSpec& in) {
  auto b = poincare_formulas(in.spec(), hdeg_or(o, 6));
  Result r;
  auto* ck = b.find("cohen_koszul");
  std::string tag = !ck || ck->verdict == Compare::Skipped ? "no formula"
                    : ck->verdict == Compare::Equal       ? "matches formula"
                                                          : "differs from formula";
  std::ostringstream os;
  std::string text = b.text();
  os << "P^R_k: " << series_str(b.truth) << " [" << tag << "]\n" << text.substr(text.find('\n') + 1);
  if (!ck || ck->verdict == Compare::Skipped) r.code = kInconclusive;
  if (ck && (ck->verdict == Compare::Violated || ck->verdict == Compare::Below)) r.code = kViolation;
  for (auto& i : b.items) {
    bool bad = i.verdict == Compare::Violated;
    if (i.name == "inert" && i.verdict == Compare::Below) bad = true;
    if (bad) r.code = kViolation;
  }
  r.summary = os.str();
  r.files.push_back({"poincare.txt", r.summary});
  return r;
}

void write_outputs(const Options& o, const std::string& command, const std::string& input_text, const Result& r,
                   double seconds) {
  if (o.out_dir.empty()) return;
  fs::create_directories(o.out_dir);
  nlohmann::ordered_json manifest;
  manifest["command"] = command;
  manifest["bounds"] = {{"hdeg", o.hdeg}, {"deg_bound", o.deg_bound}, {"arity", o.arity}, {"char", o.characteristic}};
  manifest["input"] = o.input;
  manifest["input_hash"] = fnv1a_hex(input_text);
  manifest["exit_code"] = r.code;
  manifest["wall_time_s"] = seconds;
  auto outputs = nlohmann::ordered_json::array();
  for (auto& f : r.files) {
    std::ofstream(fs::path(o.out_dir) / f.name, std::ios::binary) << f.text;
    outputs.push_back({{"file", f.name}, {"hash", fnv1a_hex(f.text)}});
  }
  manifest["outputs"] = outputs;
  std::ofstream(fs::path(o.out_dir) / "manifest.json") << manifest.dump(2) << "\n";
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("input", o.input, "input file")->required();
  sub->add_option("--hdeg", o.hdeg, "homological bound")->check(CLI::NonNegativeNumber);
  sub->add_option("--deg-bound", o.deg_bound, "internal-degree bound")->check(CLI::NonNegativeNumber);
  sub->add_option("--arity", o.arity, "A-infinity arity bound")->check(CLI::Range(2, 64));
  sub->add_option("--char", o.characteristic, "characteristic (0 or a prime)")->check(CLI::NonNegativeNumber);
  sub->add_option("--module", o.module_file, "file with a module block");
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_option("--format", o.format, "csv or txt")->check(CLI::IsMember({"csv", "txt"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free resolutions over graded quotient rings via A-infinity transfer and twisted tensor products"};
  app.require_subcommand(1);
  Options o;
  const char* names[] = {"resolve", "ainf", "priddy", "shamash", "classify", "report", "poincare", "verify"};
  const char* help[] = {"minimal Q-resolution and Betti table",
                        "transfer, serialize and verify an A-infinity structure",
                        "Priddy resolution of k or of Q/J",
                        "complete intersection pipeline and comparison",
                        "codepth-3 class, Golod, dominance, almost Golod Gorenstein",
                        "Cohen Koszul report",
                        "Poincare series formulas against ground truth",
                        "re-check a serialized A-infinity structure"};
  for (int i = 0; i < 8; ++i) add_common(app.add_subcommand(names[i], help[i]), o);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }
  std::string command = app.get_subcommands().front()->get_name();
  if (o.characteristic > 0 && !is_prime(static_cast<uint32_t>(o.characteristic))) {
    std::cerr << "error: --char must be 0 or a prime\n";
    return kParse;
  }
  auto start = std::chrono::steady_clock::now();
  std::string text;
  Result r;
  try {
    text = read_file(o.input);
    if (command == "verify") {
      r = cmd_verify(o);
    } else {
      std::optional<uint32_t> ch;
      if (o.characteristic >= 0) ch = static_cast<uint32_t>(o.characteristic);
      InputSpec in = parse_input(text, ch);
      if (command == "resolve") r = cmd_resolve(o, in);
      if (command == "ainf") r = cmd_ainf(o, in);
      if (command == "priddy") r = cmd_priddy(o, in);
      if (command == "shamash") r = cmd_shamash(o, in);
      if (command == "classify") r = cmd_classify(o, in);
      if (command == "report") r = cmd_report(o, in);
      if (command == "poincare") r = cmd_poincare(o, in);
    }
  } catch (const ParseError& e) {
    std::cerr << o.input;
    if (e.line > 0) std::cerr << ":" << e.line << ":" << e.column;
    std::cerr << ": parse error: " << e.what() << "\n";
    return kParse;
  } catch (const UnsupportedInput& e) {
    std::cout << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << r.summary;
  write_outputs(o, command, text, r, seconds);
  return r.code;
}
