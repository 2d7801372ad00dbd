#pragma once

#include <stdexcept>
#include <string>

namespace duplex {

// Text-slot vocabulary: silent listening, word onset, backchannel onset,
// temporal fill while a word's speech outlasts its text, and text payload.
enum class TokenKind { SIL, BOW, BC, PAD, TEXT };

inline const char* to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::SIL: return "SIL";
    case TokenKind::BOW: return "BOW";
    case TokenKind::BC: return "BC";
    case TokenKind::PAD: return "PAD";
    case TokenKind::TEXT: return "TEXT";
    }
    return "SIL";
}

inline TokenKind token_kind_from_string(const std::string& s) {
    if (s == "SIL") return TokenKind::SIL;
    if (s == "BOW") return TokenKind::BOW;
    if (s == "BC") return TokenKind::BC;
    if (s == "PAD") return TokenKind::PAD;
    if (s == "TEXT") return TokenKind::TEXT;
    throw std::invalid_argument("unknown token kind: " + s);
}

struct TokenSlot {
    TokenKind kind = TokenKind::SIL;
    std::string text;        // nonempty exactly when kind == TEXT
    double loss_weight = 0.0;

    static TokenSlot sil() { return {TokenKind::SIL, {}, 0.0}; }
    static TokenSlot bow() { return {TokenKind::BOW, {}, 0.0}; }
    static TokenSlot bc() { return {TokenKind::BC, {}, 0.0}; }
    static TokenSlot pad() { return {TokenKind::PAD, {}, 0.0}; }
    static TokenSlot text_token(std::string payload) {
        return {TokenKind::TEXT, std::move(payload), 0.0};
    }

    bool payload_consistent() const {
        return (kind == TokenKind::TEXT) == !text.empty();
    }

    bool operator==(const TokenSlot&) const = default;
};

} // namespace duplex
