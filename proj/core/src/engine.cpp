#include "duplex/engine.hpp"

#include <sstream>

#include <json.hpp>

#include "duplex/errors.hpp"
#include "duplex/io_util.hpp"
#include "duplex/sequence_io.hpp"
#include "json_detail.hpp"

namespace duplex {

using nlohmann::json;

DuplexState transition(DuplexState state, TokenKind slot_kind) {
    if (state == DuplexState::listening) {
        switch (slot_kind) {
        case TokenKind::SIL: return DuplexState::listening;
        case TokenKind::BOW:
        case TokenKind::BC: return DuplexState::speaking;
        case TokenKind::TEXT:
        case TokenKind::PAD:
            throw IllegalTransitionError(std::string("illegal transition: (Listening, ") +
                                         to_string(slot_kind) + ") — content without onset");
        }
    } else {
        switch (slot_kind) {
        case TokenKind::SIL: return DuplexState::listening;
        case TokenKind::BOW:
        case TokenKind::BC:
        case TokenKind::TEXT:
        case TokenKind::PAD: return DuplexState::speaking;
        }
    }
    throw IllegalTransitionError("illegal transition: unknown slot kind");
}

DuplexEngine::DuplexEngine(FrameClock clock, CodecFrame silence, std::string session_id)
    : clock_(clock), silence_(std::move(silence)), session_id_(std::move(session_id)) {}

FrameBlock DuplexEngine::step(const CodecFrame& user_frame, Policy& policy) {
    if (finalized_) {
        throw std::logic_error("DuplexEngine::step called after finalize");
    }
    PolicyContext ctx{frame_index_, state_, user_frame, user_frame == silence_};
    PolicyDecision decision = policy.decide(ctx);

    DuplexState next;
    try {
        next = transition(state_, decision.text_slot.kind);
    } catch (const IllegalTransitionError&) {
        // coerce to SIL and keep going: evaluation of imperfect policies must
        // not abort mid-corpus, and the count is itself a diagnostic
        ++coercions_;
        decision.text_slot = TokenSlot::sil();
        decision.assistant_codes = silence_;
        decision.content_tag.clear();
        next = transition(state_, TokenKind::SIL);
    }
    state_ = next;

    FrameBlock block;
    block.frame_index = frame_index_;
    block.user_speech = user_frame;
    block.text_slot = decision.text_slot;
    block.assistant_speech = decision.assistant_codes.codes.empty() ? silence_
                                                                    : decision.assistant_codes;
    blocks_.push_back(block);
    trace_.push_back(state_);
    frame_tags_.push_back(decision.content_tag);
    ++frame_index_;
    return block;
}

SessionLog DuplexEngine::finalize() {
    finalized_ = true;
    SessionLog log;
    log.session_id = session_id_;
    log.clock = clock_;
    log.blocks = std::move(blocks_);
    log.state_trace = std::move(trace_);
    log.coercion_count = coercions_;

    // derived assistant events: maximal Speaking runs of the state trace,
    // with word boundaries recovered from the opener/TEXT slots
    const int64_t spf = clock_.samples_per_frame;
    const int64_t n = static_cast<int64_t>(log.state_trace.size());
    int64_t f = 0;
    while (f < n) {
        if (log.state_trace[static_cast<size_t>(f)] != DuplexState::speaking) {
            ++f;
            continue;
        }
        int64_t start = f;
        while (f < n && log.state_trace[static_cast<size_t>(f)] == DuplexState::speaking) ++f;
        int64_t end = f; // frames [start, end) speaking

        UtteranceEvent ev;
        ev.channel = Channel::assistant;
        ev.interval = {start * spf, end * spf};
        ev.role = log.blocks[static_cast<size_t>(start)].text_slot.kind == TokenKind::BC
                      ? Role::backchannel
                      : Role::speech;
        for (int64_t g = start; g < end && ev.content_tag.empty(); ++g) {
            ev.content_tag = frame_tags_[static_cast<size_t>(g)];
        }

        // word onsets inside the run
        std::vector<int64_t> onsets;
        std::vector<std::string> texts;
        for (int64_t g = start; g < end; ++g) {
            const auto& slot = log.blocks[static_cast<size_t>(g)].text_slot;
            if (slot.kind == TokenKind::BOW || slot.kind == TokenKind::BC) {
                onsets.push_back(g);
                texts.emplace_back();
            } else if (slot.kind == TokenKind::TEXT && !texts.empty()) {
                texts.back() += slot.text;
            }
        }
        for (size_t w = 0; w < onsets.size(); ++w) {
            int64_t word_end = (w + 1 < onsets.size()) ? onsets[w + 1] : end;
            ev.words.push_back(
                {texts[w], SampleInterval{onsets[w] * spf, word_end * spf}});
        }
        log.events.push_back(std::move(ev));
    }
    return log;
}

SessionLog run_session(const std::vector<CodecFrame>& user_stream, Policy& policy,
                       const FrameClock& clock, const CodecFrame& silence,
                       const std::string& session_id) {
    if (user_stream.empty()) {
        throw DataError("run_session: empty user stream");
    }
    DuplexEngine engine(clock, silence, session_id);
    for (const auto& frame : user_stream) {
        engine.step(frame, policy);
    }
    return engine.finalize();
}

namespace {

json meta_to_json(const ScenarioMeta& meta) {
    json obj{{"scenario", meta.scenario},
             {"pre_overlap_tag", meta.pre_overlap_tag},
             {"overlap_tag", meta.overlap_tag}};
    obj["anchor_sample"] = meta.anchor_sample ? json(*meta.anchor_sample) : json(nullptr);
    obj["overlap"] = meta.overlap ? json::array({meta.overlap->start_sample,
                                                 meta.overlap->end_sample})
                                  : json(nullptr);
    obj["window"] = meta.window ? json::array({meta.window->start_sample,
                                               meta.window->end_sample})
                                : json(nullptr);
    return obj;
}

ScenarioMeta meta_from_json(const json& obj, int64_t line) {
    try {
        ScenarioMeta meta;
        meta.scenario = obj.at("scenario").get<std::string>();
        meta.pre_overlap_tag = obj.at("pre_overlap_tag").get<std::string>();
        meta.overlap_tag = obj.at("overlap_tag").get<std::string>();
        if (!obj.at("anchor_sample").is_null()) {
            meta.anchor_sample = obj.at("anchor_sample").get<int64_t>();
        }
        if (!obj.at("overlap").is_null()) {
            meta.overlap = SampleInterval{obj.at("overlap").at(0).get<int64_t>(),
                                          obj.at("overlap").at(1).get<int64_t>()};
        }
        if (!obj.at("window").is_null()) {
            meta.window = SampleInterval{obj.at("window").at(0).get<int64_t>(),
                                         obj.at("window").at(1).get<int64_t>()};
        }
        return meta;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad scenario meta: ") + e.what(), line);
    }
}

} // namespace

std::string session_to_jsonl(const SessionLog& log) {
    InterleavedSequence seq;
    seq.session_id = log.session_id;
    seq.config = BuilderConfig{}; // session logs carry live policy output, not builder settings
    seq.blocks = log.blocks;
    std::ostringstream out;
    out << sequence_to_jsonl(seq);

    json rle = json::array();
    size_t i = 0;
    while (i < log.state_trace.size()) {
        size_t j = i;
        while (j < log.state_trace.size() && log.state_trace[j] == log.state_trace[i]) ++j;
        rle.push_back(json::array({to_string(log.state_trace[i]), j - i}));
        i = j;
    }
    json events = json::array();
    for (const auto& ev : log.events) events.push_back(detail::event_to_json(ev));
    json trailer{{"coercions", log.coercion_count},
                 {"state_rle", rle},
                 {"events", events},
                 {"sample_rate", log.clock.sample_rate},
                 {"frame_rate", log.clock.frame_rate}};
    trailer["meta"] = log.meta ? meta_to_json(*log.meta) : json(nullptr);
    out << json{{"trailer", trailer}}.dump() << '\n';
    return out.str();
}

SessionLog session_from_jsonl(const std::string& content) {
    // split the trailer line off, parse the rest as a sequence
    std::vector<std::string> lines;
    {
        std::istringstream in(content);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) lines.push_back(line);
        }
    }
    if (lines.size() < 2) {
        throw ParseError("session file needs a header and a trailer");
    }
    json trailer_obj;
    try {
        trailer_obj = json::parse(lines.back());
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(),
                         static_cast<int64_t>(lines.size()));
    }
    if (!trailer_obj.contains("trailer")) {
        throw ParseError("session file is missing its trailer record",
                         static_cast<int64_t>(lines.size()));
    }

    std::string seq_part;
    for (size_t i = 0; i + 1 < lines.size(); ++i) {
        seq_part += lines[i];
        seq_part += '\n';
    }
    InterleavedSequence seq = sequence_from_jsonl(seq_part);

    SessionLog log;
    log.session_id = seq.session_id;
    log.blocks = std::move(seq.blocks);
    const int64_t trailer_line = static_cast<int64_t>(lines.size());
    try {
        const json& trailer = trailer_obj.at("trailer");
        log.clock = make_frame_clock(trailer.at("frame_rate").get<double>(),
                                     trailer.at("sample_rate").get<int64_t>());
        log.coercion_count = trailer.at("coercions").get<int64_t>();
        for (const auto& run : trailer.at("state_rle")) {
            DuplexState s = run.at(0).get<std::string>() == "S" ? DuplexState::speaking
                                                                : DuplexState::listening;
            int64_t count = run.at(1).get<int64_t>();
            log.state_trace.insert(log.state_trace.end(), static_cast<size_t>(count), s);
        }
        for (const auto& ev : trailer.at("events")) {
            log.events.push_back(detail::event_from_json(ev, trailer_line));
        }
        if (!trailer.at("meta").is_null()) {
            log.meta = meta_from_json(trailer.at("meta"), trailer_line);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad session trailer: ") + e.what(), trailer_line);
    }
    if (log.state_trace.size() != log.blocks.size()) {
        throw ParseError("state trace length != block count", trailer_line);
    }
    return log;
}

void write_session_jsonl(const SessionLog& log, const std::string& path) {
    atomic_write_file(path, session_to_jsonl(log));
}

SessionLog read_session_jsonl(const std::string& path) {
    return session_from_jsonl(read_file(path));
}

} // namespace duplex
