#include "duplex/tokenizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace duplex {

Tokenizer word_tokenizer() {
    return [](const std::string& word) { return std::vector<std::string>{word}; };
}

Tokenizer char_tokenizer() {
    return [](const std::string& word) {
        std::vector<std::string> out;
        out.reserve(word.size());
        for (char c : word) out.emplace_back(1, c);
        return out;
    };
}

Tokenizer chunk_tokenizer(size_t max_chars) {
    if (max_chars == 0) throw std::invalid_argument("chunk_tokenizer: max_chars must be > 0");
    return [max_chars](const std::string& word) {
        std::vector<std::string> out;
        for (size_t pos = 0; pos < word.size(); pos += max_chars) {
            out.push_back(word.substr(pos, max_chars));
        }
        if (out.empty()) out.push_back(word); // empty word still takes one token
        return out;
    };
}

Tokenizer default_tokenizer() { return chunk_tokenizer(6); }

} // namespace duplex
