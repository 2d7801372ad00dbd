#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duplex/frame_clock.hpp"
#include "duplex/rvq.hpp"
#include "duplex/sequence.hpp"
#include "duplex/timeline.hpp"
#include "duplex/tokens.hpp"

namespace duplex {

// The two-state automaton: SIL keeps or returns the assistant to Listening,
// a speech-onset token (BOW/BC) moves it to Speaking.
enum class DuplexState { listening, speaking };

inline const char* to_string(DuplexState s) {
    return s == DuplexState::listening ? "L" : "S";
}

// Total over all legal pairs; (Listening, TEXT) and (Listening, PAD) raise
// IllegalTransitionError (content without onset).
DuplexState transition(DuplexState state, TokenKind slot_kind);

struct PolicyDecision {
    TokenSlot text_slot;
    CodecFrame assistant_codes;
    // optional content identity attached to the segment this frame opens
    std::string content_tag;
};

struct PolicyContext {
    int64_t frame_index = 0;
    DuplexState state = DuplexState::listening;
    const CodecFrame& user_frame;
    bool user_is_silent = false;
};

class Policy {
public:
    virtual ~Policy() = default;
    virtual PolicyDecision decide(const PolicyContext& ctx) = 0;
};

// Evaluation metadata attached to a session at run time, derived from the
// source timeline: what kind of scenario this is and where its anchor lies.
struct ScenarioMeta {
    std::string scenario = "general";
    std::optional<int64_t> anchor_sample;
    std::optional<SampleInterval> overlap;
    std::optional<SampleInterval> window; // scored window for takeover counting
    std::string pre_overlap_tag;
    std::string overlap_tag;
};

struct SessionLog {
    std::string session_id;
    FrameClock clock;
    std::vector<FrameBlock> blocks;
    std::vector<DuplexState> state_trace; // state after consuming each frame's slot
    std::vector<UtteranceEvent> events;   // derived assistant events
    int64_t coercion_count = 0;
    std::optional<ScenarioMeta> meta;
};

// One engine instance serves one session, strictly sequentially. Illegal
// policy outputs are coerced to SIL and counted rather than aborting.
class DuplexEngine {
public:
    DuplexEngine(FrameClock clock, CodecFrame silence, std::string session_id);

    FrameBlock step(const CodecFrame& user_frame, Policy& policy);
    SessionLog finalize();

    DuplexState state() const { return state_; }
    int64_t frame_index() const { return frame_index_; }
    int64_t coercion_count() const { return coercions_; }

private:
    FrameClock clock_;
    CodecFrame silence_;
    std::string session_id_;
    DuplexState state_ = DuplexState::listening;
    int64_t frame_index_ = 0;
    int64_t coercions_ = 0;
    bool finalized_ = false;
    std::vector<FrameBlock> blocks_;
    std::vector<DuplexState> trace_;
    std::vector<std::string> frame_tags_;
};

SessionLog run_session(const std::vector<CodecFrame>& user_stream, Policy& policy,
                       const FrameClock& clock, const CodecFrame& silence,
                       const std::string& session_id = "session");

// Session JSONL: the builder's Sequence JSONL plus a trailer record carrying
// the run-length-encoded state trace, coercion count, derived events, and
// scenario metadata.
std::string session_to_jsonl(const SessionLog& log);
SessionLog session_from_jsonl(const std::string& content);
void write_session_jsonl(const SessionLog& log, const std::string& path);
SessionLog read_session_jsonl(const std::string& path);

} // namespace duplex
