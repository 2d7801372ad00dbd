#include "duplex/timeline.hpp"

#include <stdexcept>

namespace duplex {

const char* to_string(Channel c) {
    return c == Channel::user ? "user" : "assistant";
}

const char* to_string(Role r) {
    switch (r) {
    case Role::speech: return "speech";
    case Role::backchannel: return "backchannel";
    case Role::interrupt: return "interrupt";
    case Role::simultaneous: return "simultaneous";
    }
    return "speech";
}

Channel channel_from_string(const std::string& s) {
    if (s == "user") return Channel::user;
    if (s == "assistant") return Channel::assistant;
    throw std::invalid_argument("unknown channel: " + s);
}

Role role_from_string(const std::string& s) {
    if (s == "speech") return Role::speech;
    if (s == "backchannel") return Role::backchannel;
    if (s == "interrupt") return Role::interrupt;
    if (s == "simultaneous") return Role::simultaneous;
    throw std::invalid_argument("unknown role: " + s);
}

std::vector<TimelineViolation> validate_timeline(const ConversationTimeline& timeline) {
    std::vector<TimelineViolation> out;
    const auto& events = timeline.events;

    for (size_t i = 0; i < events.size(); ++i) {
        const auto& ev = events[i];
        int64_t idx = static_cast<int64_t>(i);

        if (!ev.interval.valid()) {
            out.push_back({"reversed-interval", idx, -1,
                           "event " + std::to_string(i) + " has invalid interval [" +
                               std::to_string(ev.interval.start_sample) + ", " +
                               std::to_string(ev.interval.end_sample) + ")"});
            continue; // word checks against a broken interval are noise
        }

        int64_t prev_word_end = -1;
        for (size_t w = 0; w < ev.words.size(); ++w) {
            const auto& word = ev.words[w];
            if (!word.interval.valid()) {
                out.push_back({"reversed-word-interval", idx, -1,
                               "event " + std::to_string(i) + " word '" + word.word +
                                   "' has invalid interval"});
                continue;
            }
            if (word.interval.start_sample < ev.interval.start_sample ||
                word.interval.end_sample > ev.interval.end_sample) {
                out.push_back({"word-outside-utterance", idx, -1,
                               "event " + std::to_string(i) + " word '" + word.word +
                                   "' exceeds the utterance interval"});
            }
            if (word.interval.start_sample < prev_word_end) {
                out.push_back({"word-overlap", idx, -1,
                               "event " + std::to_string(i) + " word '" + word.word +
                                   "' overlaps or precedes the previous word"});
            }
            prev_word_end = word.interval.end_sample;
        }
    }

    // Same-channel speech events must not overlap each other.
    for (size_t i = 0; i < events.size(); ++i) {
        if (events[i].role != Role::speech || !events[i].interval.valid()) continue;
        for (size_t j = i + 1; j < events.size(); ++j) {
            if (events[j].role != Role::speech || !events[j].interval.valid()) continue;
            if (events[i].channel != events[j].channel) continue;
            if (overlap_duration(events[i].interval, events[j].interval) > 0) {
                out.push_back({"same-channel-overlap", static_cast<int64_t>(i),
                               static_cast<int64_t>(j),
                               "speech events " + std::to_string(i) + " and " +
                                   std::to_string(j) + " overlap on channel " +
                                   to_string(events[i].channel)});
            }
        }
    }

    return out;
}

} // namespace duplex
