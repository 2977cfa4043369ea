package app.model;

public interface Auditable {
    void audit(AuditLog log);
}
