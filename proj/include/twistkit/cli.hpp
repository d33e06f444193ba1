#ifndef TWISTKIT_CLI_HPP
#define TWISTKIT_CLI_HPP

#include "twistkit/jsonio.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twistkit::cli
{

/// Invalid command line or configuration; maps to exit code 2.
class UsageError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

enum class Command
{
  verify,
  show,
  export_
};

enum class Status
{
  pass,
  fail,
  recorded_mismatch,
  vacuous
};
std::string to_string(Status s);

struct ParamSet
{
  std::string label;
  Params params;
};

/// "γ=1,δ=1,μ=i", "gamma=1,delta=1,mu=i" or positional "1,1,i".
Params parse_params(std::string_view text);
/// The parameter values of the isu, iso, Schrödinger and Poincaré embeddings.
std::vector<ParamSet> paper_parameter_sets();
/// `trials` triples of nonzero Gaussian rationals with small numerators and
/// denominators, fully determined by the seed.
std::vector<ParamSet> random_parameter_sets(std::uint64_t seed, int trials);

const std::vector<std::string> &suite_names();

struct RunConfig
{
  Command command = Command::verify;
  std::string topic; // show/export subject: algebra, coproduct, twist, rmatrix, embedding
  std::string suite = "all";
  std::string family;
  std::optional<std::string> algebra;
  std::optional<std::string> algebra_file;
  std::optional<std::string> embedding_file;
  std::optional<std::string> target;
  std::optional<int> n;
  std::optional<std::string> params;
  int order = 4;
  int trials = 5;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool verbatim = false;
  bool strict_paper = false;
  bool timing = false;
  std::optional<std::string> generator;
  std::optional<std::string> output;
  unsigned jobs = 0; // 0: one per hardware thread
};

struct ReportEntry
{
  std::string suite;
  std::string check;
  std::string subject;
  std::string params; // empty when the check has no parameters
  Status status = Status::pass;
  std::string residual;
  std::string value; // optional rendering of the computed object
  std::vector<std::string> ledger;
  double seconds = 0;
};

struct Report
{
  std::vector<ReportEntry> entries;
  std::vector<ParamSet> parameter_sets;
  std::size_t count(Status s) const;
  int exit_code() const { return count(Status::fail) == 0 ? 0 : 1; }
};

/// Runs the configured suites. Entries appear in canonical order
/// (suite, then task enumeration order) independent of scheduling.
Report run_verify(const RunConfig &cfg);

nlohmann::ordered_json report_to_json(const Report &report, const RunConfig &cfg);
void print_report_text(const Report &report, const RunConfig &cfg, std::ostream &out);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace twistkit::cli

#endif
