package shop;

final class Util {
    private Util() { }

    static int total(Order.Line[] lines) {
        int sum = 0;
        for (Order.Line l : lines) sum += l.quantity;
        return sum;
    }

    static <T extends Entity> T first(java.util.List<T> items) {
        return items.isEmpty() ? null : items.get(0);
    }
}
