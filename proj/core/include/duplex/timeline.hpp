#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "duplex/frame_clock.hpp"

namespace duplex {

enum class Channel { user, assistant };
enum class Role { speech, backchannel, interrupt, simultaneous };

const char* to_string(Channel c);
const char* to_string(Role r);
Channel channel_from_string(const std::string& s);
Role role_from_string(const std::string& s);

struct WordAlignment {
    std::string word;
    SampleInterval interval;

    bool operator==(const WordAlignment&) const = default;
};

struct UtteranceEvent {
    Channel channel = Channel::user;
    Role role = Role::speech;
    SampleInterval interval;
    std::vector<WordAlignment> words;
    // Opaque identifier linking content across segments (set at generation
    // time; drives rule-based Respond/Resume classification).
    std::string content_tag;

    bool operator==(const UtteranceEvent&) const = default;
};

// Dual-channel, sample-accurate record of a conversation. Immutable value
// object after construction; all timestamps are integer samples.
struct ConversationTimeline {
    std::string session_id;
    FrameClock clock;
    std::vector<UtteranceEvent> events;
};

struct TimelineViolation {
    std::string code;       // e.g. "same-channel-overlap", "word-outside-utterance"
    int64_t event_index = -1;
    int64_t other_index = -1; // second event for pairwise violations, else -1
    std::string message;
};

// Reports every invariant violation; empty result iff the timeline is valid.
// Violations are data, not failures.
std::vector<TimelineViolation> validate_timeline(const ConversationTimeline& timeline);

} // namespace duplex
