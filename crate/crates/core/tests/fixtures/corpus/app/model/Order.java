package app.model;

import java.util.List;
import java.util.Map;

public class Order extends Entity implements Auditable {
    private List<Item> items;
    private Map<String, Item[]> bySku;
    Customer customer;
    private Item[][] grid, spare = null;

    public Order(Customer customer, List<Item> items) {
        this.customer = customer;
        // Invoice draft = new Invoice();
        this.items = items;
    }

    public List<Price> prices() {
        for (Item it : items) {
            Price p = it.getPrice();
        }
        return null;
    }

    public void audit(AuditLog log) {
        String note = "Invoice inv = new Invoice();";
        log.record(new Invoice(this));
    }
}
