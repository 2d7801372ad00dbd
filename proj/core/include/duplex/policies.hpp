#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "duplex/engine.hpp"
#include "duplex/sequence.hpp"
#include "duplex/timeline.hpp"
#include "duplex/tokenizer.hpp"

namespace duplex {

// Never speaks.
class SilentPolicy : public Policy {
public:
    explicit SilentPolicy(CodecFrame silence) : silence_(std::move(silence)) {}
    PolicyDecision decide(const PolicyContext& ctx) override;

private:
    CodecFrame silence_;
};

// Replays a prebuilt interleaved sequence frame by frame; emits the source
// event's content tag at each word onset. Block f of its session equals
// block f of the sequence it replays.
class ScriptedTimelinePolicy : public Policy {
public:
    ScriptedTimelinePolicy(InterleavedSequence sequence, CodecFrame silence,
                           std::vector<std::pair<FrameInterval, std::string>> tag_spans = {});

    static ScriptedTimelinePolicy from_timeline(const ConversationTimeline& timeline,
                                                const Tokenizer& tokenizer, const RvqCodec& codec,
                                                const BuilderConfig& config);

    PolicyDecision decide(const PolicyContext& ctx) override;

private:
    InterleavedSequence sequence_;
    CodecFrame silence_;
    std::vector<std::pair<FrameInterval, std::string>> tag_spans_;
};

// One scripted utterance word for the VAD policy: the spoken word, its text
// tokens, and the total frames its speech occupies (>= 1 + tokens).
struct ScriptedWord {
    std::string word;
    std::vector<std::string> tokens;
    int64_t frames = 2;
};

// Speaks a canned utterance once the user has been silent for
// `silence_frames_threshold` consecutive frames; yields (emits SIL) as soon
// as the user speaks again while it is speaking.
class ThresholdVadPolicy : public Policy {
public:
    ThresholdVadPolicy(int64_t silence_frames_threshold, std::vector<ScriptedWord> script,
                       const RvqCodec& codec, std::string content_tag = "vad-response",
                       bool yield_on_user_speech = true);

    PolicyDecision decide(const PolicyContext& ctx) override;

private:
    int64_t threshold_;
    std::vector<ScriptedWord> script_;
    const RvqCodec& codec_;
    std::string content_tag_;
    bool yield_on_user_speech_;

    int64_t consecutive_silent_ = 0;
    bool triggered_ = false;
    std::vector<PolicyDecision> queue_;
    size_t queue_pos_ = 0;
};

// Default canned response for the CLI's vad policy.
std::vector<ScriptedWord> default_vad_script();

} // namespace duplex
