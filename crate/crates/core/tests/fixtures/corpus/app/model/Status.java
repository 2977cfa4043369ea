package app.model;

public enum Status {
    OPEN, CLOSED;
    Order last;
}
