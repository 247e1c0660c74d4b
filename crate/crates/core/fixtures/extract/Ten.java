class Ten {
    int tenLines(int n) {
        int total = 0;
        for (int i = 0; i < n; i++) {
            total += i;
        }
        String s = "}}}";
        total += s.length();
        total -= 1;
        return total;
    }
}
