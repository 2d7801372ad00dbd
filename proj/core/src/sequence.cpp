#include "duplex/sequence.hpp"

#include <algorithm>
#include <stdexcept>

#include "duplex/errors.hpp"
#include "duplex/rng.hpp"

namespace duplex {

const char* to_string(TrainingMode mode) {
    return mode == TrainingMode::pretraining ? "pretraining" : "finetuning";
}

TrainingMode training_mode_from_string(const std::string& s) {
    if (s == "pretraining") return TrainingMode::pretraining;
    if (s == "finetuning") return TrainingMode::finetuning;
    throw std::invalid_argument("unknown training mode: " + s);
}

std::vector<double> mock_word_embedding(const std::string& word, int64_t frame_offset, int dim,
                                        uint64_t seed) {
    SeededRng rng(mix_seed(seed ^ fnv1a(word), static_cast<uint64_t>(frame_offset)));
    std::vector<double> out(static_cast<size_t>(dim));
    for (auto& v : out) v = rng.uniform(-1.0, 1.0);
    return out;
}

namespace {

struct WordSpan {
    int64_t start_frame = 0;
    int64_t end_frame = 0;
    const WordAlignment* word = nullptr;
};

// Word i owns [onset_i, onset_{i+1}); the last word runs to the event's
// frame-cover end. Inter-word gap frames extend the previous word's span so
// an utterance is a single contiguous speaking run.
std::vector<WordSpan> word_spans(const UtteranceEvent& event, const FrameClock& clock) {
    std::vector<WordSpan> spans;
    if (event.words.empty()) return spans;
    int64_t event_end_frame = to_frames(event.interval, clock).end_frame;
    for (size_t i = 0; i < event.words.size(); ++i) {
        WordSpan span;
        span.word = &event.words[i];
        span.start_frame = event.words[i].interval.start_sample / clock.samples_per_frame;
        span.end_frame = (i + 1 < event.words.size())
                             ? event.words[i + 1].interval.start_sample / clock.samples_per_frame
                             : event_end_frame;
        spans.push_back(span);
    }
    return spans;
}

int64_t timeline_frame_count(const ConversationTimeline& timeline, int64_t min_frames) {
    int64_t n = min_frames;
    for (const auto& ev : timeline.events) {
        n = std::max(n, to_frames(ev.interval, timeline.clock).end_frame);
    }
    return n;
}

// Fills per-frame codec frames for one channel: encoded mock embeddings
// inside utterances, the canonical silence frame elsewhere.
void fill_channel_codes(const ConversationTimeline& timeline, Channel channel,
                        const RvqCodec& codec, uint64_t embedding_seed,
                        std::vector<CodecFrame>& out) {
    const auto& clock = timeline.clock;
    for (const auto& ev : timeline.events) {
        if (ev.channel != channel) continue;
        if (!ev.words.empty()) {
            for (const auto& span : word_spans(ev, clock)) {
                for (int64_t f = span.start_frame; f < span.end_frame; ++f) {
                    if (f < 0 || f >= static_cast<int64_t>(out.size())) continue;
                    out[static_cast<size_t>(f)] = codec.encode_frame(mock_word_embedding(
                        span.word->word, f - span.start_frame, codec.dim(), embedding_seed));
                }
            }
        } else {
            auto frames = to_frames(ev.interval, clock);
            std::string key = ev.content_tag.empty() ? std::string(to_string(channel))
                                                     : ev.content_tag;
            for (int64_t f = frames.start_frame; f < frames.end_frame; ++f) {
                if (f < 0 || f >= static_cast<int64_t>(out.size())) continue;
                out[static_cast<size_t>(f)] = codec.encode_frame(
                    mock_word_embedding(key, f - frames.start_frame, codec.dim(), embedding_seed));
            }
        }
    }
}

} // namespace

InterleavedSequence build_sequence(const ConversationTimeline& timeline, const Tokenizer& tokenizer,
                                   const RvqCodec& codec, const BuilderConfig& config,
                                   int64_t min_frames) {
    auto violations = validate_timeline(timeline);
    if (!violations.empty()) {
        throw DataError("build_sequence: timeline invalid: " + violations.front().message);
    }

    const auto& clock = timeline.clock;
    int64_t n_frames = timeline_frame_count(timeline, min_frames);

    InterleavedSequence seq;
    seq.session_id = timeline.session_id;
    seq.config = config;
    seq.blocks.resize(static_cast<size_t>(n_frames));
    const CodecFrame& silence = codec.silence_frame();
    for (int64_t f = 0; f < n_frames; ++f) {
        auto& block = seq.blocks[static_cast<size_t>(f)];
        block.frame_index = f;
        block.user_speech = silence;
        block.text_slot = TokenSlot::sil();
        block.assistant_speech = silence;
    }

    // speech channels
    std::vector<CodecFrame> user_codes(seq.blocks.size(), silence);
    std::vector<CodecFrame> asst_codes(seq.blocks.size(), silence);
    fill_channel_codes(timeline, Channel::user, codec, config.embedding_seed, user_codes);
    fill_channel_codes(timeline, Channel::assistant, codec, config.embedding_seed, asst_codes);
    for (size_t f = 0; f < seq.blocks.size(); ++f) {
        seq.blocks[f].user_speech = std::move(user_codes[f]);
        seq.blocks[f].assistant_speech = std::move(asst_codes[f]);
    }

    // assistant text slots
    for (const auto& ev : timeline.events) {
        if (ev.channel != Channel::assistant) continue;
        if (ev.words.empty()) {
            throw DataError("build_sequence: assistant event without word alignments (tag '" +
                            ev.content_tag + "')");
        }
        bool backchannel = ev.role == Role::backchannel;
        for (const auto& span : word_spans(ev, clock)) {
            auto tokens = tokenizer(span.word->word);
            int64_t capacity = span.end_frame - span.start_frame;
            int64_t needed = 1 + static_cast<int64_t>(tokens.size());
            if (capacity < needed) {
                throw SpanCapacityError(
                    "word '" + span.word->word + "' spans " + std::to_string(capacity) +
                    " frames but needs " + std::to_string(needed) + " (onset + " +
                    std::to_string(tokens.size()) + " text tokens)");
            }
            auto put = [&](int64_t f, TokenSlot slot) {
                auto& target = seq.blocks.at(static_cast<size_t>(f)).text_slot;
                if (target.kind != TokenKind::SIL) {
                    throw DataError("build_sequence: assistant events collide at frame " +
                                    std::to_string(f));
                }
                target = std::move(slot);
            };
            put(span.start_frame, backchannel ? TokenSlot::bc() : TokenSlot::bow());
            for (size_t t = 0; t < tokens.size(); ++t) {
                put(span.start_frame + 1 + static_cast<int64_t>(t),
                    TokenSlot::text_token(tokens[t]));
            }
            for (int64_t f = span.start_frame + needed; f < span.end_frame; ++f) {
                put(f, TokenSlot::pad());
            }
        }
    }

    return seq;
}

InterleavedSequence apply_text_lookahead(const InterleavedSequence& seq, int k) {
    if (k < 0) throw std::invalid_argument("apply_text_lookahead: k must be >= 0");
    if (k == 0) return seq;
    const int64_t n = static_cast<int64_t>(seq.blocks.size());
    for (int64_t f = 0; f < std::min<int64_t>(k, n); ++f) {
        if (seq.blocks[static_cast<size_t>(f)].text_slot.kind != TokenKind::SIL) {
            throw LookaheadUnderflowError(
                "lookahead k=" + std::to_string(k) + " would shift a non-SIL slot at frame " +
                std::to_string(f) + " below frame 0 (speech cannot begin at frame < k)");
        }
    }

    InterleavedSequence out = seq;
    for (int64_t f = 0; f < n; ++f) {
        TokenSlot shifted = (f + k < n) ? seq.blocks[static_cast<size_t>(f + k)].text_slot
                                        : TokenSlot::sil();
        // a slot vacated inside a speaking span becomes PAD: the word's
        // speech is still playing even though its text has moved earlier
        if (shifted.kind == TokenKind::SIL &&
            seq.blocks[static_cast<size_t>(f)].text_slot.kind != TokenKind::SIL) {
            shifted = TokenSlot::pad();
        }
        out.blocks[static_cast<size_t>(f)].text_slot = std::move(shifted);
    }
    return out;
}

InterleavedSequence remove_text_lookahead(const InterleavedSequence& seq, int k,
                                          const CodecFrame& silence) {
    if (k < 0) throw std::invalid_argument("remove_text_lookahead: k must be >= 0");
    if (k == 0) return seq;
    const int64_t n = static_cast<int64_t>(seq.blocks.size());
    InterleavedSequence out = seq;
    for (int64_t f = 0; f < n; ++f) {
        TokenSlot unshifted = (f - k >= 0) ? seq.blocks[static_cast<size_t>(f - k)].text_slot
                                           : TokenSlot::sil();
        bool speech_active = !(seq.blocks[static_cast<size_t>(f)].assistant_speech == silence);
        if (!speech_active && unshifted.kind != TokenKind::SIL) {
            unshifted = TokenSlot::sil();
        }
        out.blocks[static_cast<size_t>(f)].text_slot = std::move(unshifted);
    }
    return out;
}

InterleavedSequence assign_loss_weights(const InterleavedSequence& seq,
                                        const BuilderConfig& config) {
    InterleavedSequence out = seq;
    for (auto& block : out.blocks) {
        switch (block.text_slot.kind) {
        case TokenKind::PAD: block.text_slot.loss_weight = config.pad_weight; break;
        case TokenKind::SIL: block.text_slot.loss_weight = config.sil_weight; break;
        case TokenKind::TEXT:
        case TokenKind::BOW: block.text_slot.loss_weight = config.text_weight; break;
        case TokenKind::BC:
            block.text_slot.loss_weight = config.text_weight * config.bc_weight_multiplier;
            break;
        }
    }
    return out;
}

std::vector<SequenceViolation> validate_sequence(const InterleavedSequence& seq) {
    std::vector<SequenceViolation> out;
    enum class Scan { outside, in_word_text, in_word_pad };
    Scan state = Scan::outside;
    for (size_t f = 0; f < seq.blocks.size(); ++f) {
        const auto& block = seq.blocks[f];
        int64_t fi = static_cast<int64_t>(f);
        if (block.frame_index != fi) {
            out.push_back({fi, "frame index " + std::to_string(block.frame_index) +
                                   " != position " + std::to_string(fi)});
        }
        if (!block.text_slot.payload_consistent()) {
            out.push_back({fi, "text payload present iff kind == TEXT violated"});
        }
        switch (block.text_slot.kind) {
        case TokenKind::SIL:
            state = Scan::outside;
            break;
        case TokenKind::BOW:
        case TokenKind::BC:
            state = Scan::in_word_text;
            break;
        case TokenKind::TEXT:
            if (state == Scan::outside) {
                out.push_back({fi, "TEXT without word opener"});
            } else if (state == Scan::in_word_pad) {
                out.push_back({fi, "TEXT after PAD within a word"});
            }
            state = Scan::in_word_text;
            break;
        case TokenKind::PAD:
            if (state == Scan::outside) {
                out.push_back({fi, "PAD without word opener"});
            }
            state = Scan::in_word_pad;
            break;
        }
    }
    return out;
}

RecoveredTimeline invert_sequence(const InterleavedSequence& seq, const FrameClock& clock) {
    auto violations = validate_sequence(seq);
    if (!violations.empty()) {
        throw DataError("invert_sequence: invalid grammar at frame " +
                        std::to_string(violations.front().frame_index) + ": " +
                        violations.front().message);
    }

    RecoveredTimeline rec;
    const int64_t n = static_cast<int64_t>(seq.blocks.size());
    int64_t f = 0;
    while (f < n) {
        if (seq.blocks[static_cast<size_t>(f)].text_slot.kind == TokenKind::SIL) {
            ++f;
            continue;
        }
        // maximal non-SIL run
        int64_t start = f;
        bool span_bc = seq.blocks[static_cast<size_t>(f)].text_slot.kind == TokenKind::BC;
        while (f < n && seq.blocks[static_cast<size_t>(f)].text_slot.kind != TokenKind::SIL) {
            const auto& slot = seq.blocks[static_cast<size_t>(f)].text_slot;
            if (slot.kind == TokenKind::BOW || slot.kind == TokenKind::BC) {
                RecoveredWord word;
                word.onset_frame = f;
                word.backchannel = slot.kind == TokenKind::BC;
                int64_t t = f + 1;
                while (t < n &&
                       seq.blocks[static_cast<size_t>(t)].text_slot.kind == TokenKind::TEXT) {
                    word.text += seq.blocks[static_cast<size_t>(t)].text_slot.text;
                    ++t;
                }
                rec.word_onsets.push_back(std::move(word));
            }
            ++f;
        }
        RecoveredSpan span;
        span.frames = {start, f};
        span.samples = {start * clock.samples_per_frame, f * clock.samples_per_frame};
        span.backchannel = span_bc;
        rec.speaking_spans.push_back(span);
    }
    return rec;
}

std::vector<CodecFrame> user_stream_from_timeline(const ConversationTimeline& timeline,
                                                  const RvqCodec& codec, uint64_t embedding_seed,
                                                  int64_t min_frames) {
    int64_t n_frames = timeline_frame_count(timeline, min_frames);
    std::vector<CodecFrame> out(static_cast<size_t>(n_frames), codec.silence_frame());
    fill_channel_codes(timeline, Channel::user, codec, embedding_seed, out);
    return out;
}

} // namespace duplex
