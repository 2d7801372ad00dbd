#include "duplex/policies.hpp"

#include <stdexcept>

namespace duplex {

PolicyDecision SilentPolicy::decide(const PolicyContext&) {
    return {TokenSlot::sil(), silence_, {}};
}

ScriptedTimelinePolicy::ScriptedTimelinePolicy(
    InterleavedSequence sequence, CodecFrame silence,
    std::vector<std::pair<FrameInterval, std::string>> tag_spans)
    : sequence_(std::move(sequence)), silence_(std::move(silence)),
      tag_spans_(std::move(tag_spans)) {}

ScriptedTimelinePolicy ScriptedTimelinePolicy::from_timeline(const ConversationTimeline& timeline,
                                                             const Tokenizer& tokenizer,
                                                             const RvqCodec& codec,
                                                             const BuilderConfig& config) {
    InterleavedSequence seq = build_sequence(timeline, tokenizer, codec, config);
    std::vector<std::pair<FrameInterval, std::string>> tags;
    for (const auto& ev : timeline.events) {
        if (ev.channel != Channel::assistant) continue;
        tags.emplace_back(to_frames(ev.interval, timeline.clock), ev.content_tag);
    }
    return ScriptedTimelinePolicy(std::move(seq), codec.silence_frame(), std::move(tags));
}

PolicyDecision ScriptedTimelinePolicy::decide(const PolicyContext& ctx) {
    if (ctx.frame_index >= static_cast<int64_t>(sequence_.blocks.size())) {
        return {TokenSlot::sil(), silence_, {}};
    }
    const auto& block = sequence_.blocks[static_cast<size_t>(ctx.frame_index)];
    PolicyDecision decision{block.text_slot, block.assistant_speech, {}};
    if (decision.text_slot.kind == TokenKind::BOW || decision.text_slot.kind == TokenKind::BC) {
        for (const auto& [frames, tag] : tag_spans_) {
            if (ctx.frame_index >= frames.start_frame && ctx.frame_index < frames.end_frame) {
                decision.content_tag = tag;
                break;
            }
        }
    }
    return decision;
}

ThresholdVadPolicy::ThresholdVadPolicy(int64_t silence_frames_threshold,
                                       std::vector<ScriptedWord> script, const RvqCodec& codec,
                                       std::string content_tag, bool yield_on_user_speech)
    : threshold_(silence_frames_threshold), script_(std::move(script)), codec_(codec),
      content_tag_(std::move(content_tag)), yield_on_user_speech_(yield_on_user_speech) {
    if (threshold_ < 1) {
        throw std::invalid_argument("ThresholdVadPolicy: threshold must be >= 1");
    }
    // pre-render the scripted utterance as (slot, codes) per frame
    for (const auto& word : script_) {
        int64_t needed = 1 + static_cast<int64_t>(word.tokens.size());
        int64_t total = std::max(word.frames, needed);
        for (int64_t f = 0; f < total; ++f) {
            PolicyDecision d;
            if (f == 0) {
                d.text_slot = TokenSlot::bow();
            } else if (f <= static_cast<int64_t>(word.tokens.size())) {
                d.text_slot = TokenSlot::text_token(word.tokens[static_cast<size_t>(f - 1)]);
            } else {
                d.text_slot = TokenSlot::pad();
            }
            d.assistant_codes = codec_.encode_frame(
                mock_word_embedding(word.word, f, codec_.dim(), 0));
            d.content_tag = content_tag_;
            queue_.push_back(std::move(d));
        }
    }
}

PolicyDecision ThresholdVadPolicy::decide(const PolicyContext& ctx) {
    if (ctx.state == DuplexState::speaking) {
        if (yield_on_user_speech_ && !ctx.user_is_silent) {
            // barge-in: stop talking and go back to listening
            queue_pos_ = queue_.size();
            consecutive_silent_ = 0;
            return {TokenSlot::sil(), codec_.silence_frame(), {}};
        }
        if (queue_pos_ < queue_.size()) {
            return queue_[queue_pos_++];
        }
        consecutive_silent_ = 0;
        return {TokenSlot::sil(), codec_.silence_frame(), {}};
    }

    // listening: trigger on the count of already-seen consecutive silent frames
    bool trigger = !triggered_ && consecutive_silent_ >= threshold_ && !queue_.empty();
    if (ctx.user_is_silent) {
        ++consecutive_silent_;
    } else {
        consecutive_silent_ = 0;
    }
    if (trigger) {
        triggered_ = true;
        queue_pos_ = 0;
        return queue_[queue_pos_++];
    }
    return {TokenSlot::sil(), codec_.silence_frame(), {}};
}

std::vector<ScriptedWord> default_vad_script() {
    return {
        {"sure", {"sure"}, 2},
        {"happy", {"happy"}, 3},
        {"helping", {"helpin", "g"}, 3},
        {"here", {"here"}, 2},
    };
}

} // namespace duplex
