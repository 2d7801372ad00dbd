#include "duplex/sequence_io.hpp"

#include <sstream>

#include <json.hpp>

#include "duplex/errors.hpp"
#include "duplex/io_util.hpp"

namespace duplex {

using nlohmann::json;

namespace {

json config_to_json(const BuilderConfig& cfg) {
    return json{{"lookahead_frames", cfg.lookahead_frames},
                {"pad_weight", cfg.pad_weight},
                {"sil_weight", cfg.sil_weight},
                {"bc_weight_multiplier", cfg.bc_weight_multiplier},
                {"text_weight", cfg.text_weight},
                {"mode", to_string(cfg.mode)},
                {"embedding_seed", cfg.embedding_seed}};
}

BuilderConfig config_from_json(const json& obj, int64_t line) {
    try {
        BuilderConfig cfg;
        cfg.lookahead_frames = obj.at("lookahead_frames").get<int>();
        cfg.pad_weight = obj.at("pad_weight").get<double>();
        cfg.sil_weight = obj.at("sil_weight").get<double>();
        cfg.bc_weight_multiplier = obj.at("bc_weight_multiplier").get<double>();
        cfg.text_weight = obj.at("text_weight").get<double>();
        cfg.mode = training_mode_from_string(obj.at("mode").get<std::string>());
        cfg.embedding_seed = obj.at("embedding_seed").get<uint64_t>();
        return cfg;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad sequence header config: ") + e.what(), line);
    }
}

json slot_to_json(const TokenSlot& slot) {
    json obj{{"kind", to_string(slot.kind)}, {"loss_w", slot.loss_weight}};
    if (slot.kind == TokenKind::TEXT) obj["text"] = slot.text;
    return obj;
}

TokenSlot slot_from_json(const json& obj, int64_t line) {
    try {
        TokenSlot slot;
        slot.kind = token_kind_from_string(obj.at("kind").get<std::string>());
        slot.loss_weight = obj.at("loss_w").get<double>();
        if (obj.contains("text")) slot.text = obj.at("text").get<std::string>();
        if (!slot.payload_consistent()) {
            throw ParseError("text payload present iff kind == TEXT violated", line);
        }
        return slot;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad text_slot: ") + e.what(), line);
    }
}

} // namespace

std::string sequence_to_jsonl(const InterleavedSequence& seq) {
    std::ostringstream out;
    out << json{{"session_id", seq.session_id}, {"config", config_to_json(seq.config)}}.dump()
        << '\n';
    for (const auto& block : seq.blocks) {
        out << json{{"f", block.frame_index},
                    {"text_slot", slot_to_json(block.text_slot)},
                    {"user_codes", block.user_speech.codes},
                    {"asst_codes", block.assistant_speech.codes}}
                   .dump()
            << '\n';
    }
    return out.str();
}

InterleavedSequence sequence_from_jsonl(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    InterleavedSequence seq;
    bool header_seen = false;
    int64_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_number);
        }
        if (!header_seen) {
            try {
                seq.session_id = obj.at("session_id").get<std::string>();
                seq.config = config_from_json(obj.at("config"), line_number);
            } catch (const json::exception& e) {
                throw ParseError(std::string("bad sequence header: ") + e.what(), line_number);
            }
            header_seen = true;
            continue;
        }
        try {
            FrameBlock block;
            block.frame_index = obj.at("f").get<int64_t>();
            block.text_slot = slot_from_json(obj.at("text_slot"), line_number);
            block.user_speech.codes = obj.at("user_codes").get<std::vector<int>>();
            block.assistant_speech.codes = obj.at("asst_codes").get<std::vector<int>>();
            seq.blocks.push_back(std::move(block));
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad frame block: ") + e.what(), line_number);
        }
    }
    if (!header_seen) {
        throw ParseError("sequence file has no header line");
    }
    return seq;
}

void write_sequence_jsonl(const InterleavedSequence& seq, const std::string& path) {
    atomic_write_file(path, sequence_to_jsonl(seq));
}

InterleavedSequence read_sequence_jsonl(const std::string& path) {
    return sequence_from_jsonl(read_file(path));
}

} // namespace duplex
