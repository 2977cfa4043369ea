package app.model;

public class Price {
    public double amount;
    public String currency = "new Currency()";

    public Price plus(Price other) {
        Price sum = new Price();
        return sum;
    }
}
