package shop;

abstract class Payment {
    abstract boolean charge(Order order);
}

class CardPayment extends Payment {
    private final String number;

    CardPayment(String number) { this.number = number; }

    boolean charge(Order order) {
        Invoice invoice = new Invoice(order);
        return invoice != null;
    }
}
