#pragma once

// Internal JSON converters shared by the serialization units. Not installed;
// public headers stay std-only.

#include <json.hpp>

#include "duplex/errors.hpp"
#include "duplex/timeline.hpp"

namespace duplex::detail {

using nlohmann::json;

inline void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                                  const char* where, int64_t line) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* name : allowed) {
            if (it.key() == name) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError(std::string("unknown field \"") + it.key() + "\" in " + where, line);
        }
    }
}

inline json word_to_json(const WordAlignment& w) {
    return json{{"w", w.word},
                {"start_sample", w.interval.start_sample},
                {"end_sample", w.interval.end_sample}};
}

inline json event_to_json(const UtteranceEvent& ev) {
    json words = json::array();
    for (const auto& w : ev.words) words.push_back(word_to_json(w));
    return json{{"channel", to_string(ev.channel)},
                {"role", to_string(ev.role)},
                {"start_sample", ev.interval.start_sample},
                {"end_sample", ev.interval.end_sample},
                {"content_tag", ev.content_tag},
                {"words", words}};
}

inline WordAlignment word_from_json(const json& obj, int64_t line) {
    if (!obj.is_object()) throw ParseError("word entry must be an object", line);
    reject_unknown_fields(obj, {"w", "start_sample", "end_sample"}, "word", line);
    WordAlignment w;
    w.word = obj.at("w").get<std::string>();
    w.interval.start_sample = obj.at("start_sample").get<int64_t>();
    w.interval.end_sample = obj.at("end_sample").get<int64_t>();
    return w;
}

inline UtteranceEvent event_from_json(const json& obj, int64_t line) {
    if (!obj.is_object()) throw ParseError("event entry must be an object", line);
    reject_unknown_fields(
        obj, {"channel", "role", "start_sample", "end_sample", "content_tag", "words"},
        "event", line);
    UtteranceEvent ev;
    ev.channel = channel_from_string(obj.at("channel").get<std::string>());
    ev.role = role_from_string(obj.at("role").get<std::string>());
    ev.interval.start_sample = obj.at("start_sample").get<int64_t>();
    ev.interval.end_sample = obj.at("end_sample").get<int64_t>();
    ev.content_tag = obj.at("content_tag").get<std::string>();
    for (const auto& w : obj.at("words")) ev.words.push_back(word_from_json(w, line));
    return ev;
}

} // namespace duplex::detail
