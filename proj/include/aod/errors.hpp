#pragma once

#include <stdexcept>
#include <string>

namespace aod {

// One error enum for the whole library; the CLI maps these onto exit codes.
enum class Errc {
  // schema / extraction
  no_json_found,
  json_parse_error,
  // metrics
  empty_sequence,
  empty_reference_set,
  empty_hypothesis,
  empty_references,
  empty_input,
  empty_batch,
  // nle
  non_monotonic_bounds,
  missing_metric,
  // judge
  missing_category,
  ambiguous_answer,
  unparseable_answer,
  missing_feedback_prefix,
  // policy
  missing_prompt_block,
  degenerate_trajectory,
  // gateway
  budget_exceeded,
  timeout,
  http_error,
  transcript_exhausted,
  transcript_mismatch,
  // envsim
  regime_violation,
  // config / io
  invalid_config,
  io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace aod
