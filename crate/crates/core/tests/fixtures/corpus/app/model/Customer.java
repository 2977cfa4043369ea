package app.model;

public class Customer extends Entity {
    private String name;
    private Address address = new Address();

    public Address getAddress() { return address; }

    public static class Address {
        String street;
        Customer owner;

        public Address() {}
    }

    @Override
    public Entity copy() {
        Customer c = new Customer();
        c.address = this.address;
        return c;
    }
}
