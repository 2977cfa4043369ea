package app.ui;

public class Screen {
    private Panel root;
    protected Panel[] children = new Panel[4];
    private char quote = '"';
    private String text = """
        Panel p = new Panel();
        """;

    public Screen(Panel root, int width) {
        this.root = root;
    }

    public void show(Order order) {
        final Renderer r = new Renderer(order);
        r.draw(root);
    }
}
