#include "aod/errors.hpp"

namespace aod {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::no_json_found: return "NoJsonFound";
    case Errc::json_parse_error: return "ParseError";
    case Errc::empty_sequence: return "EmptySequence";
    case Errc::empty_reference_set: return "EmptyReferenceSet";
    case Errc::empty_hypothesis: return "EmptyHypothesis";
    case Errc::empty_references: return "EmptyReferences";
    case Errc::empty_input: return "EmptyInput";
    case Errc::empty_batch: return "EmptyBatch";
    case Errc::non_monotonic_bounds: return "NonMonotonicBounds";
    case Errc::missing_metric: return "MissingMetric";
    case Errc::missing_category: return "MissingCategory";
    case Errc::ambiguous_answer: return "AmbiguousAnswer";
    case Errc::unparseable_answer: return "UnparseableAnswer";
    case Errc::missing_feedback_prefix: return "MissingFeedbackPrefix";
    case Errc::missing_prompt_block: return "MissingPromptBlock";
    case Errc::degenerate_trajectory: return "DegenerateTrajectory";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::timeout: return "Timeout";
    case Errc::http_error: return "HttpError";
    case Errc::transcript_exhausted: return "TranscriptExhausted";
    case Errc::transcript_mismatch: return "TranscriptMismatch";
    case Errc::regime_violation: return "RegimeViolation";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace aod
