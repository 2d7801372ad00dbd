#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "duplex/frame_clock.hpp"
#include "duplex/rvq.hpp"
#include "duplex/timeline.hpp"
#include "duplex/tokenizer.hpp"
#include "duplex/tokens.hpp"

namespace duplex {

enum class TrainingMode { pretraining, finetuning };

const char* to_string(TrainingMode mode);
TrainingMode training_mode_from_string(const std::string& s);

struct BuilderConfig {
    int lookahead_frames = 1;
    double pad_weight = 0.75;
    double sil_weight = 0.5; // 0.5 pretraining, 0.25 finetuning
    double bc_weight_multiplier = 50.0;
    double text_weight = 1.0;
    TrainingMode mode = TrainingMode::pretraining;
    uint64_t embedding_seed = 0; // seeds the mock word embeddings

    static BuilderConfig for_mode(TrainingMode mode) {
        BuilderConfig cfg;
        cfg.mode = mode;
        cfg.sil_weight = (mode == TrainingMode::finetuning) ? 0.25 : 0.5;
        return cfg;
    }

    bool operator==(const BuilderConfig&) const = default;
};

// One 80 ms tick: user speech in, one text slot and assistant speech out.
struct FrameBlock {
    int64_t frame_index = 0;
    CodecFrame user_speech;      // consumed, never loss-weighted
    TokenSlot text_slot;
    CodecFrame assistant_speech;

    bool operator==(const FrameBlock&) const = default;
};

struct InterleavedSequence {
    std::string session_id;
    BuilderConfig config;
    std::vector<FrameBlock> blocks;
};

// Deterministic mock embedding for a word at a given frame offset.
std::vector<double> mock_word_embedding(const std::string& word, int64_t frame_offset, int dim,
                                        uint64_t seed);

// Lays a valid timeline out on the 12.5 Hz grid: per assistant word, a
// BOW/BC onset slot, then the word's text tokens, then PAD to the word's
// frame-span end; SIL outside utterances. Speech slots carry encoded mock
// embeddings inside utterances and the canonical silence frame elsewhere.
// min_frames extends the sequence with trailing silence.
InterleavedSequence build_sequence(const ConversationTimeline& timeline, const Tokenizer& tokenizer,
                                   const RvqCodec& codec, const BuilderConfig& config,
                                   int64_t min_frames = 0);

// Shifts text slots k frames earlier relative to their speech. Slots vacated
// inside a speaking span become PAD (speech still playing); slots vacated
// outside spans become SIL. Non-SIL slots shifted below frame 0 raise
// LookaheadUnderflowError.
InterleavedSequence apply_text_lookahead(const InterleavedSequence& seq, int k);

// Inverse of apply_text_lookahead; needs the codec's silence frame to tell
// speech-active frames from silent ones.
InterleavedSequence remove_text_lookahead(const InterleavedSequence& seq, int k,
                                          const CodecFrame& silence);

// PAD -> pad_weight, SIL -> sil_weight, TEXT/BOW -> text_weight,
// BC -> text_weight * bc_weight_multiplier.
InterleavedSequence assign_loss_weights(const InterleavedSequence& seq,
                                        const BuilderConfig& config);

struct SequenceViolation {
    int64_t frame_index = 0;
    std::string message;
};

// Checks the text-slot grammar: every maximal non-SIL span must parse as
// ((BOW|BC) TEXT* PAD*)+.
std::vector<SequenceViolation> validate_sequence(const InterleavedSequence& seq);

struct RecoveredWord {
    int64_t onset_frame = 0;
    bool backchannel = false; // opened by BC rather than BOW
    std::string text;         // token payloads concatenated
};

struct RecoveredSpan {
    FrameInterval frames;
    SampleInterval samples;
    bool backchannel = false; // span opened by BC
};

struct RecoveredTimeline {
    std::vector<RecoveredWord> word_onsets;
    std::vector<RecoveredSpan> speaking_spans;
};

// Frame-resolution inverse of build_sequence: word onsets from BOW/BC slots,
// speaking spans from maximal non-SIL runs. Rejects sequences that fail
// validate_sequence.
RecoveredTimeline invert_sequence(const InterleavedSequence& seq, const FrameClock& clock);

// The user-channel path of build_sequence alone: one codec frame per tick.
std::vector<CodecFrame> user_stream_from_timeline(const ConversationTimeline& timeline,
                                                  const RvqCodec& codec, uint64_t embedding_seed,
                                                  int64_t min_frames = 0);

} // namespace duplex
