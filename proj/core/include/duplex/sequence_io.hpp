#pragma once

#include <string>
#include <vector>

#include "duplex/sequence.hpp"

namespace duplex {

// Sequence JSONL: a header line with session_id and config, then one frame
// block per line.
std::string sequence_to_jsonl(const InterleavedSequence& seq);
InterleavedSequence sequence_from_jsonl(const std::string& content);

void write_sequence_jsonl(const InterleavedSequence& seq, const std::string& path);
InterleavedSequence read_sequence_jsonl(const std::string& path);

} // namespace duplex
