class Broken {
    void ok() {
    }
    void bad() {
        if (x) {
    }
