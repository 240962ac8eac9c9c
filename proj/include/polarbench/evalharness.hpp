#pragma once
// Prompting, querying, parsing, scoring and aggregation of model evaluations.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "polarbench/answer.hpp"
#include "polarbench/dataset.hpp"
#include "polarbench/taskgen.hpp"

namespace polarbench {

// ---- Prompts ---------------------------------------------------------------

enum class PromptMode { Standard, ConversionHint, FewShot, TwoStageCaption, TwoStageAnswer };

std::string_view to_string(PromptMode m);
PromptMode prompt_mode_from_string(std::string_view s);

inline constexpr size_t kFewShotCount = 5;

struct MessagePart {
  enum class Kind { Text, Image } kind = Kind::Text;
  std::string text;      // Text parts
  std::string image_id;  // Image parts: instance id
  std::string svg;       // Image parts: document bytes
};

struct Message {
  std::string role;  // "user" or "assistant"
  std::vector<MessagePart> parts;
};

using Prompt = std::vector<Message>;

size_t image_count(const Prompt& p);

struct PromptInputs {
  std::vector<const Instance*> exemplars;  // FewShot only
  std::optional<std::string> caption;      // TwoStageAnswer only
};

class PromptError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Prompt build_prompt(const Instance& inst, PromptMode mode, const PromptInputs& in = {});

/// Five Polar instances of the target's task with other seeds, chosen
/// deterministically from `pool`. Throws PromptError when too few exist.
std::vector<const Instance*> pick_exemplars(const Instance& target, const std::vector<Instance>& pool);

// ---- Endpoint --------------------------------------------------------------

struct EndpointConfig {
  std::string url;  // full chat-completions URL
  std::string model;
  std::string auth_env;  // name of the variable holding the API key; empty = no auth
  int max_output_tokens = 4096;
  std::string reasoning = "none";  // high | none
  int concurrency = 4;
  std::optional<std::string> rasterize_cmd;  // "{in}" and "{out}" are substituted
  int max_retries = 4;
  int backoff_ms = 500;
  int timeout_s = 300;

  static EndpointConfig from_json(const nlohmann::json& j);
};

struct QueryResult {
  std::string raw;
  std::optional<std::string> trace;
  int64_t latency_ms = 0;
  bool truncated = false;
  int attempts = 1;
};

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request body sent for `p` (OpenAI-style chat completion).
nlohmann::json request_body(const Prompt& p, const EndpointConfig& cfg);

QueryResult query_model(const Prompt& p, const EndpointConfig& cfg, const std::string& request_id);

// ---- Parsing and scoring ---------------------------------------------------

/// Never throws; nullopt means the response did not follow any known format.
std::optional<Answer> parse_answer(std::string_view raw, AnswerType type);

bool score(const Answer& parsed, const Answer& truth);

/// Lexical approximation: "(int, int)" tuples or "row/column/col N".
bool detect_coordinate_invocation(std::string_view trace);

enum class SizeMention { Correct, Incorrect, Unmentioned };
std::string_view to_string(SizeMention m);

SizeMention check_grid_size_mention(std::string_view caption, int major, int minor);

// ---- Records ---------------------------------------------------------------

struct EvalRecord {
  std::string instance_id;
  PromptMode mode = PromptMode::Standard;
  int repeat = 0;
  std::string model;
  std::string raw_response;
  std::optional<std::string> reasoning_trace;
  std::optional<Answer> parsed;
  std::optional<bool> correct;  // nullopt = unjudged
  std::string judged_by;        // "exact", "judge" or empty
  int64_t latency_ms = 0;
  bool truncated = false;
  std::optional<std::string> caption;
  std::optional<SizeMention> size_mention;

  std::string key() const;
  nlohmann::json to_json() const;
  static EvalRecord from_json(const nlohmann::json& j);
};

std::vector<EvalRecord> read_records(const std::filesystem::path& file);

/// Consulted only for records whose response did not parse.
using JudgeHook = std::function<std::optional<bool>(const Instance& inst, const std::string& raw)>;

/// Fills parsed/correct/judged_by from raw_response.
void grade(EvalRecord& r, const Instance& inst, const JudgeHook& judge = nullptr);

// ---- Aggregation -----------------------------------------------------------

struct Accuracy {
  int n = 0;
  int correct = 0;
  std::optional<double> pct() const;
};

struct ScopeRow {
  std::string scope;  // "overall", "category", "task", "alignment", "boundary"
  std::string name;
  std::map<std::string, Accuracy> by_topology;
  std::optional<double> cartesian() const;
  std::optional<double> polar() const;
  std::optional<double> delta() const;
};

struct AggregateReport {
  std::vector<ScopeRow> rows;
  std::map<std::string, Accuracy> coordinate_invocation;  // per topology, over records with traces
  int records = 0;
  int unjudged = 0;
  int truncated = 0;

  nlohmann::json to_json() const;
  std::string to_text() const;
  const ScopeRow* find(const std::string& scope, const std::string& name) const;
};

class AggregationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Percentages are rounded to one decimal and delta is their difference.
AggregateReport aggregate(const std::vector<EvalRecord>& records, const std::vector<Instance>& manifest);

double round1(double v);

// ---- Runner ----------------------------------------------------------------

enum class TopologyFilter { Cartesian, Polar, Both };
TopologyFilter topology_filter_from_string(std::string_view s);

struct RunOptions {
  PromptMode mode = PromptMode::Standard;  // TwoStageAnswer runs caption then answer
  TopologyFilter topology = TopologyFilter::Both;
  int repeats = 1;
  std::vector<std::string> tasks;  // empty = all
  JudgeHook judge;
};

struct RunSummary {
  int queried = 0;
  int skipped = 0;  // already present in the records file
  std::vector<std::string> failures;  // "<id>: <reason>"
};

/// Evaluates every selected instance of the dataset in `dataset_dir`, appending
/// to `<out_dir>/records.jsonl`. Records already present (same instance, mode
/// and repeat, not truncated) are not re-queried.
RunSummary run_eval(const std::filesystem::path& dataset_dir, const EndpointConfig& endpoint, const RunOptions& opt,
                    const std::filesystem::path& out_dir);

}  // namespace polarbench
