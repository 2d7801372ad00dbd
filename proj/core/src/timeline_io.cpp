#include "duplex/timeline_io.hpp"

#include <json.hpp>

#include "duplex/errors.hpp"
#include "duplex/io_util.hpp"
#include "duplex/rng.hpp"
#include "json_detail.hpp"

namespace duplex {

using nlohmann::json;

namespace {

json timeline_to_json(const ConversationTimeline& t) {
    json events = json::array();
    for (const auto& ev : t.events) events.push_back(detail::event_to_json(ev));
    return json{{"session_id", t.session_id},
                {"sample_rate", t.clock.sample_rate},
                {"frame_rate", t.clock.frame_rate},
                {"events", events}};
}

} // namespace

std::string timeline_to_jsonl_line(const ConversationTimeline& timeline) {
    return timeline_to_json(timeline).dump();
}

ConversationTimeline timeline_from_jsonl_line(const std::string& line, int64_t line_number) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), line_number);
    }
    try {
        if (!obj.is_object()) throw ParseError("timeline record must be an object", line_number);
        detail::reject_unknown_fields(obj, {"session_id", "sample_rate", "frame_rate", "events"},
                                      "timeline", line_number);
        ConversationTimeline t;
        t.session_id = obj.at("session_id").get<std::string>();
        t.clock = make_frame_clock(obj.at("frame_rate").get<double>(),
                                   obj.at("sample_rate").get<int64_t>());
        for (const auto& ev : obj.at("events")) {
            t.events.push_back(detail::event_from_json(ev, line_number));
        }
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad timeline record: ") + e.what(), line_number);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad timeline record: ") + e.what(), line_number);
    }
}

std::vector<ConversationTimeline> read_timeline_jsonl(const std::string& path) {
    std::vector<ConversationTimeline> out;
    auto lines = read_lines(path);
    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        out.push_back(timeline_from_jsonl_line(lines[i], static_cast<int64_t>(i + 1)));
    }
    return out;
}

void write_timeline_jsonl(const std::vector<ConversationTimeline>& timelines,
                          const std::string& path) {
    std::string content;
    for (const auto& t : timelines) {
        content += timeline_to_jsonl_line(t);
        content += '\n';
    }
    atomic_write_file(path, content);
}

uint64_t timeline_content_hash(const ConversationTimeline& timeline) {
    ConversationTimeline stripped = timeline;
    stripped.session_id.clear();
    return fnv1a(timeline_to_jsonl_line(stripped));
}

} // namespace duplex
