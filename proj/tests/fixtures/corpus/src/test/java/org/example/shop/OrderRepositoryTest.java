package org.example.shop;

import org.example.shop.store.InMemoryOrderRepository;
import org.example.shop.store.OrderRepository;

public class OrderRepositoryTest {
    interface Fixture {
        OrderRepository repository();
    }

    public void savesOrders() {
        OrderRepository repo = new InMemoryOrderRepository();
    }
}
