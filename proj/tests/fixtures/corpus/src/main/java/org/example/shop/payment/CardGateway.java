package org.example.shop.payment;

import java.math.BigDecimal;
import java.util.UUID;

public class CardGateway implements PaymentGateway, Auditable {
    @Override
    public String authorize(String account, BigDecimal amount) {
        return UUID.randomUUID().toString();
    }

    @Override
    public void capture(String authorization) {
    }

    @Override
    public void refund(String authorization, BigDecimal amount) {
        if (amount.signum() < 0) {
            throw new IllegalArgumentException("negative refund");
        }
    }
}
