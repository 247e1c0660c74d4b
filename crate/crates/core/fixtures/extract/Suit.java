enum Suit {
    SPADES {
        @Override
        String symbol() { return "S"; }
    },
    HEARTS;

    String symbol() {
        return "?";
    }
}
