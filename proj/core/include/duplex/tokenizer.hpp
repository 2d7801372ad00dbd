#pragma once

#include <functional>
#include <string>
#include <vector>

namespace duplex {

// word -> ordered text tokens
using Tokenizer = std::function<std::vector<std::string>(const std::string&)>;

// One token per word.
Tokenizer word_tokenizer();

// One token per character (plumbing; too fine for the 12.5 Hz grid with the
// default duration model, but useful in tests).
Tokenizer char_tokenizer();

// One token per run of up to `max_chars` characters.
Tokenizer chunk_tokenizer(size_t max_chars);

// Pipeline default: chunk_tokenizer(6).
Tokenizer default_tokenizer();

} // namespace duplex
