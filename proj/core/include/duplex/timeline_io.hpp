#pragma once

#include <string>
#include <vector>

#include "duplex/timeline.hpp"

namespace duplex {

// Timeline JSONL: one session per line. Field names are fixed; unknown
// fields are rejected.
std::string timeline_to_jsonl_line(const ConversationTimeline& timeline);
ConversationTimeline timeline_from_jsonl_line(const std::string& line, int64_t line_number = 0);

std::vector<ConversationTimeline> read_timeline_jsonl(const std::string& path);
void write_timeline_jsonl(const std::vector<ConversationTimeline>& timelines,
                          const std::string& path);

// Canonical content hash over clock + events (session_id excluded), used by
// the dedup filter.
uint64_t timeline_content_hash(const ConversationTimeline& timeline);

} // namespace duplex
