package shop;

import java.util.*;

/** Stock kept per warehouse. */
public class Inventory {
    private final Map<String, Integer> stock = new HashMap<>();
    private static final String SEP = "{";

    static {
        System.out.println("loading }");
    }

    /** Creates an empty inventory. */
    public Inventory() {
    }

    // adds items; braces in comments { are ignored
    public void add(String sku, int count) {
        stock.merge(sku, count, Integer::sum);
    }

    public void add(String sku) {
        add(sku, 1);
    }

    public <T extends Comparable<T>> T max(List<T> xs) throws IllegalStateException {
        if (xs.isEmpty()) {
            throw new IllegalStateException("empty");
        }
        return Collections.max(xs);
    }

    public Runnable reporter() {
        return new Runnable() {
            @Override
            public void run() {
                System.out.println('{');
            }
        };
    }

    static class Entry {
        int count(Map<String, List<Integer>> m, String k) {
            return m.getOrDefault(k, List.of()).size();
        }
    }
}
